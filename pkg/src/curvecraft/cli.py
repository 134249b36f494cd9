"""Command line front end.

Machine output (CSV, JSON, SVG) goes to stdout as raw bytes; diagnostics go to
stderr.  Exit codes: 0 success, 1 domain or feasibility failure, 2 usage error.
The sampling and encoding helpers are the same ones the HTTP service uses, so
a CLI export and a service response for the same problem are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import render as R
from .auxiliary import validate_auxiliary
from .basis import build
from .errors import CurveCraftError, InfeasibleParameterError
from .figures import FIGURE_NUMBERS, write_figures

__all__ = ["main"]

DEFAULT_PORT = 8720
_CURVE_SAMPLES = 201
_INTERP_SAMPLES = 501


def _write(data: bytes) -> None:
    sys.stdout.buffer.write(data)
    sys.stdout.buffer.flush()


def _read_source(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _load_json(path: str, field: str):
    raw = _read_source(path)
    try:
        return json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise R.SchemaError(f"{field} is not valid JSON: {exc}", field=field) from exc


def _cmd_eval_basis(args) -> int:
    system = R.parse_system_text(args.system)
    aux = R.parse_aux_text(args.aux)
    basis = build(system, aux, args.sigma)
    ts = np.linspace(0.0, 1.0, args.samples)
    from .basis import evaluate_all

    rows = evaluate_all(basis, ts)
    names = ["t"] + [f"T{i}" for i in range(basis.count)]
    _write(R.csv_bytes(names, [ts] + [rows[i] for i in range(basis.count)]))
    return 0


def _cmd_curve(args) -> int:
    prob = R.parse_curve_problem(_load_json(args.problem, "problem"))
    sigmas = None
    if args.sigma_sweep is not None:
        if args.sigma_sweep < 2:
            raise R.SchemaError("--sigma-sweep needs at least 2 values", field="sigma_sweep")
        sigmas = np.linspace(0.0, 1.0, args.sigma_sweep)
    if args.out == "csv":
        _write(R.curve_csv(prob, args.samples, sigmas))
    else:
        _write(R.render_svg(R.curve_scene(prob, args.samples, sigmas)))
    return 0


def _interp_problem_from_args(args) -> R.InterpProblem:
    data = R.parse_dataset_csv(_read_source(args.data))
    body = {
        "dataset": [[float(x), float(f)] for x, f in zip(data.x, data.f)],
        "mode": args.mode,
        "sigma": args.sigma,
    }
    if args.strategy is not None:
        body["solution_strategy"] = args.strategy
    strategy = body.get("solution_strategy", "sol1" if args.mode == "c1" else "appendix_c")
    if strategy == "remark":
        if args.zeta is None or args.eta is None:
            raise R.SchemaError("the remark strategy needs --zeta and --eta", field="zeta")
        body["zeta"], body["eta"] = args.zeta, args.eta
    else:
        if args.s is None:
            raise R.SchemaError(f"strategy {strategy!r} needs --s", field="s")
        body["s"] = args.s
    if args.aux is not None:
        body["aux"] = R.aux_to_dict(R.parse_aux_text(args.aux))
    return R.parse_interp_problem(body)


def _cmd_interp(args) -> int:
    if args.report and args.out != "json":
        raise R.SchemaError("--report requires --out json", field="report")
    result = R.solve_interp_problem(_interp_problem_from_args(args))
    if args.out == "csv":
        _write(R.interp_csv(result, args.samples))
    elif args.out == "svg":
        _write(R.render_svg(R.interp_scene(result, args.samples)))
    else:
        from .interpolation import sample_interpolant

        xs, ys = sample_interpolant(result.curve, args.samples)
        doc = {
            "solution": result.solution.as_dict(),
            "bounds": {k: float(v) for k, v in result.bounds.items()},
            "samples": {"x": xs.tolist(), "y": ys.tolist()},
        }
        if args.report:
            reference = None
            if args.reference is not None:
                ref = R.parse_dataset_csv(_read_source(args.reference))
                reference = np.column_stack([ref.x, ref.f])
            doc["report"] = R.interp_report(result, reference)
        _write(R.json_document(doc))
    return 0


def _cmd_validate_aux(args) -> int:
    aux = R.parse_aux_text(args.aux)
    report = validate_auxiliary(aux, grid_size=args.grid)
    doc = {
        "aux": R.aux_to_dict(aux),
        "flags": {
            "increasing": aux.increasing,
            "c2_compatible": aux.c2_compatible,
            "strict_partition": aux.strict_partition,
        },
        "report": report.as_dict(),
        "all_passed": report.all_passed,
    }
    _write(R.json_document(doc))
    return 0


def _cmd_figures(args) -> int:
    numbers = FIGURE_NUMBERS if args.which == "all" else (int(args.which),)
    written = write_figures(args.outdir, numbers)
    _write(("\n".join(written) + "\n").encode("utf-8"))
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    serve(host=args.host, port=args.port)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvecraft", description="Shape-adjustable blending curves")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-basis", help="sample an enhanced basis as CSV")
    p.add_argument("--system", required=True, help="family shorthand or JSON, e.g. bernstein:3")
    p.add_argument("--aux", default="cubic", help="auxiliary shorthand or JSON")
    p.add_argument("--sigma", required=True, type=float)
    p.add_argument("--samples", type=int, default=101)
    p.set_defaults(func=_cmd_eval_basis)

    p = sub.add_parser("curve", help="evaluate a curve problem")
    p.add_argument("--problem", required=True, help="JSON file path, or - for stdin")
    p.add_argument("--samples", type=int, default=_CURVE_SAMPLES)
    p.add_argument("--sigma-sweep", type=int, default=None, help="sample K sigmas over [0, 1]")
    p.add_argument("--out", choices=("csv", "svg"), default="csv")
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("interp", help="monotone interpolation of a dataset")
    p.add_argument("--data", required=True, help="CSV file with header x,f; - for stdin")
    p.add_argument("--mode", required=True, choices=("c1", "c2"))
    p.add_argument("--strategy", choices=("sol1", "appendix_c", "remark"), default=None)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--zeta", type=float, default=None)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--sigma", required=True, type=float)
    p.add_argument("--aux", default=None, help="auxiliary shorthand or JSON")
    p.add_argument("--samples", type=int, default=_INTERP_SAMPLES)
    p.add_argument("--out", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--report", action="store_true", help="include constraint and continuity report (json only)")
    p.add_argument("--reference", default=None, help="CSV x,f reference for an error profile")
    p.set_defaults(func=_cmd_interp)

    p = sub.add_parser("validate-aux", help="run the auxiliary admissibility checks")
    p.add_argument("--aux", required=True)
    p.add_argument("--grid", type=int, default=1001)
    p.set_defaults(func=_cmd_validate_aux)

    p = sub.add_parser("figures", help="write the gallery figures as SVG files")
    p.add_argument("--which", default="all", choices=("all",) + tuple(str(n) for n in FIGURE_NUMBERS))
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=_cmd_figures)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=int(os.environ.get("CURVECRAFT_PORT", DEFAULT_PORT)))
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleParameterError as exc:
        sys.stderr.write(f"error: {exc} (bound: {exc.bound!r})\n")
        return 1
    except CurveCraftError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
