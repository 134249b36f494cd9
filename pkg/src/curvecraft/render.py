"""Wire formats: CSV exports, deterministic SVG scenes, JSON problem codecs.

Everything here is shared by the CLI and the HTTP service so that both emit
byte-identical output for the same problem.  CSV cells carry full round-trip
precision (17 significant digits, locale-independent); SVG coordinates are
fixed to 6 decimals and elements are emitted in insertion order, making the
bytes a pure function of the scene.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .auxiliary import AuxiliaryFunction, bernstein_tail, cubic, expo_rational, pseudo_psi, quintic, trig
from .basis import EnhancedBasis, build
from .blending import BlendingSystem, bernstein, lambda_mu, p_bezier, yan_cubic
from .curves import ControlPolygon, ParametricCurve, sample_curve
from .errors import SchemaError
from .interpolation import (
    C1Solution,
    C2Solution,
    MonotoneDataset,
    PiecewiseCurve,
    c1_feasible_solution,
    c1_interpolant,
    c1_s_bound,
    c2_appendix_solution,
    c2_interpolant,
    c2_remark_solution,
    c2_s_bound,
    c2_zeta_eta_bound,
    continuity_report,
    error_profile,
    sample_interpolant,
)

__all__ = [
    "csv_bytes",
    "parse_dataset_csv",
    "Polyline",
    "MarkerSet",
    "SceneSpec",
    "render_svg",
    "parse_system_text",
    "parse_aux_text",
    "parse_system",
    "parse_aux",
    "system_to_dict",
    "aux_to_dict",
    "parse_polygon",
    "parse_sigma",
    "CurveProblem",
    "parse_curve_problem",
    "curve_scene",
    "curve_csv",
    "InterpProblem",
    "InterpResult",
    "parse_interp_problem",
    "solve_interp_problem",
    "interp_csv",
    "interp_report",
    "interp_scene",
    "json_document",
]


# -- CSV ----------------------------------------------------------------------


def _cell(v: float) -> str:
    return format(float(v), ".17g")


def csv_bytes(names, columns) -> bytes:
    """Encode equal-length numeric columns under the given header names."""
    cols = [np.asarray(c, dtype=float).ravel() for c in columns]
    if len(cols) != len(names) or any(c.size != cols[0].size for c in cols):
        raise SchemaError("header/column mismatch in CSV export")
    lines = [",".join(names)]
    for row in zip(*cols):
        lines.append(",".join(_cell(v) for v in row))
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_dataset_csv(data: bytes) -> MonotoneDataset:
    """Parse a two-column dataset with header ``x,f``."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SchemaError("dataset CSV is not valid UTF-8", field="dataset") from exc
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SchemaError("dataset CSV is empty", field="dataset")
    header = [h.strip().lower() for h in lines[0].split(",")]
    if header != ["x", "f"]:
        raise SchemaError(f"dataset CSV header must be 'x,f', got {lines[0]!r}", field="dataset")
    xs, fs = [], []
    for nr, ln in enumerate(lines[1:], start=2):
        parts = ln.split(",")
        if len(parts) != 2:
            raise SchemaError(f"dataset CSV line {nr} does not have two cells", field="dataset")
        try:
            xs.append(float(parts[0]))
            fs.append(float(parts[1]))
        except ValueError as exc:
            raise SchemaError(f"dataset CSV line {nr} is not numeric", field="dataset") from exc
    return MonotoneDataset(np.asarray(xs), np.asarray(fs))


# -- SVG ----------------------------------------------------------------------


@dataclass(frozen=True)
class Polyline:
    points: tuple  # ((x, y), ...)
    stroke: str = "#1f6f8b"
    width: float = 1.5
    dash: str | None = None


@dataclass(frozen=True)
class MarkerSet:
    points: tuple
    radius: float = 3.0
    fill: str = "#b43b3b"


@dataclass(frozen=True)
class SceneSpec:
    polylines: tuple[Polyline, ...]
    markers: tuple[MarkerSet, ...] = ()
    width: int = 640
    height: int = 480
    margin: int = 40


def _scene_bounds(scene: SceneSpec) -> tuple[float, float, float, float]:
    pts = [p for line in scene.polylines for p in line.points]
    pts += [p for m in scene.markers for p in m.points]
    if not pts:
        raise SchemaError("scene has no content")
    arr = np.asarray(pts, dtype=float)
    x0, y0 = arr.min(axis=0)
    x1, y1 = arr.max(axis=0)
    if x1 - x0 < 1e-12:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 0.5, y1 + 0.5
    return float(x0), float(y0), float(x1), float(y1)


def render_svg(scene: SceneSpec) -> bytes:
    """Deterministic SVG 1.1 document; world y grows upward (flipped for the viewer)."""
    x0, y0, x1, y1 = _scene_bounds(scene)
    W, H, m = scene.width, scene.height, scene.margin
    sx = (W - 2 * m) / (x1 - x0)
    sy = (H - 2 * m) / (y1 - y0)

    def map_pt(p) -> str:
        px = m + (p[0] - x0) * sx
        py = H - m - (p[1] - y0) * sy
        return f"{px:.6f},{py:.6f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="#ffffff"/>',
    ]
    for line in scene.polylines:
        d = "M " + " L ".join(map_pt(p) for p in line.points)
        dash = f' stroke-dasharray="{line.dash}"' if line.dash else ""
        parts.append(
            f'<path d="{d}" fill="none" stroke="{line.stroke}" stroke-width="{line.width:g}"{dash}/>'
        )
    for ms in scene.markers:
        for p in ms.points:
            cx, cy = map_pt(p).split(",")
            parts.append(f'<circle cx="{cx}" cy="{cy}" r="{ms.radius:g}" fill="{ms.fill}"/>')
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("ascii")


# -- system / aux codecs ------------------------------------------------------

_SYSTEM_FAMILIES = ("bernstein", "p_bezier", "lambda_mu", "yan_cubic")
_AUX_NAMES = ("cubic", "quintic", "bernstein_tail", "trig", "expo_rational", "pseudo_psi")


def _num(obj, key: str, path: str) -> float:
    if key not in obj:
        raise SchemaError(f"missing field {path}.{key}", field=f"{path}.{key}")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(f"{path}.{key} must be a number", field=f"{path}.{key}")
    return float(v)


def _int(obj, key: str, path: str) -> int:
    if key not in obj:
        raise SchemaError(f"missing field {path}.{key}", field=f"{path}.{key}")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{path}.{key} must be an integer", field=f"{path}.{key}")
    return v


def parse_system(obj, path: str = "system") -> BlendingSystem:
    if not isinstance(obj, dict):
        raise SchemaError(f"{path} must be an object", field=path)
    fam = obj.get("family")
    if fam not in _SYSTEM_FAMILIES:
        raise SchemaError(
            f"{path}.family must be one of {', '.join(_SYSTEM_FAMILIES)}", field=f"{path}.family"
        )
    if fam == "bernstein":
        return bernstein(_int(obj, "degree", path))
    if fam == "p_bezier":
        return p_bezier(_num(obj, "gamma", path))
    if fam == "lambda_mu":
        return lambda_mu(_num(obj, "lambda", path), _num(obj, "mu", path))
    return yan_cubic(_num(obj, "lambda", path))


def system_to_dict(system: BlendingSystem) -> dict:
    out = {"family": system.family}
    if system.family == "bernstein":
        out["degree"] = system.degree
    else:
        out.update({k: float(v) for k, v in system.params.items()})
    return out


def parse_aux(obj, path: str = "aux") -> AuxiliaryFunction:
    if not isinstance(obj, dict):
        raise SchemaError(f"{path} must be an object", field=path)
    name = obj.get("aux")
    if name not in _AUX_NAMES:
        raise SchemaError(f"{path}.aux must be one of {', '.join(_AUX_NAMES)}", field=f"{path}.aux")
    if name == "bernstein_tail":
        return bernstein_tail(_int(obj, "n", path))
    if name == "trig":
        return trig(_int(obj, "k", path))
    return {"cubic": cubic, "quintic": quintic, "expo_rational": expo_rational, "pseudo_psi": pseudo_psi}[name]()


def aux_to_dict(aux: AuxiliaryFunction) -> dict:
    out = {"aux": aux.name}
    out.update({k: int(v) for k, v in aux.params.items()})
    return out


def parse_system_text(text: str) -> BlendingSystem:
    """Shorthand grammar: ``bernstein:3``, ``p_bezier:0.01``, ``lambda_mu:2,0``, ``yan:-0.5``.

    A JSON object string is accepted as well.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            return parse_system(json.loads(text))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"system JSON is malformed: {exc}", field="system") from exc
    name, _, rest = text.partition(":")
    name = name.strip().lower()
    args = [a.strip() for a in rest.split(",")] if rest else []
    try:
        if name == "bernstein":
            return bernstein(int(args[0]))
        if name == "p_bezier":
            return p_bezier(float(args[0]))
        if name == "lambda_mu":
            return lambda_mu(float(args[0]), float(args[1]))
        if name in ("yan", "yan_cubic"):
            return yan_cubic(float(args[0]))
    except (IndexError, ValueError) as exc:
        raise SchemaError(f"malformed system shorthand {text!r}", field="system") from exc
    raise SchemaError(f"unknown system family {name!r}", field="system")


def parse_aux_text(text: str) -> AuxiliaryFunction:
    """Shorthand grammar: ``cubic``, ``quintic``, ``bernstein_tail:5``, ``trig:1``, ..."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return parse_aux(json.loads(text))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"aux JSON is malformed: {exc}", field="aux") from exc
    name, _, rest = text.partition(":")
    name = name.strip().lower()
    try:
        if name == "bernstein_tail":
            return bernstein_tail(int(rest))
        if name == "trig":
            return trig(int(rest))
        if name in ("cubic", "quintic", "expo_rational", "pseudo_psi") and not rest:
            return {"cubic": cubic, "quintic": quintic, "expo_rational": expo_rational, "pseudo_psi": pseudo_psi}[name]()
    except ValueError as exc:
        raise SchemaError(f"malformed aux shorthand {text!r}", field="aux") from exc
    raise SchemaError(f"unknown aux shorthand {text!r}", field="aux")


def parse_sigma(obj, path: str = "basis") -> float:
    return _num(obj, "sigma", path)


def parse_polygon(obj, path: str = "polygon") -> ControlPolygon:
    if not isinstance(obj, list) or not obj:
        raise SchemaError(f"{path} must be a non-empty array of points", field=path)
    for i, p in enumerate(obj):
        if (
            not isinstance(p, list)
            or len(p) < 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in p)
        ):
            raise SchemaError(f"{path}[{i}] must be an array of numbers", field=f"{path}[{i}]")
    arr = np.asarray(obj, dtype=float)
    if arr.ndim != 2:
        raise SchemaError(f"{path} points must all have the same dimension", field=path)
    return ControlPolygon(arr)


# -- curve problems -----------------------------------------------------------


@dataclass(frozen=True)
class CurveProblem:
    system: BlendingSystem
    aux: AuxiliaryFunction
    sigma: float
    polygon: ControlPolygon

    def basis_at(self, sigma: float | None = None) -> EnhancedBasis:
        return build(self.system, self.aux, self.sigma if sigma is None else sigma)


def parse_curve_problem(obj) -> CurveProblem:
    """Wire schema: {"basis": {"system": {...}, "aux": {...}, "sigma": w}, "polygon": [[..], ..]}."""
    if not isinstance(obj, dict):
        raise SchemaError("problem must be an object", field="problem")
    basis = obj.get("basis")
    if not isinstance(basis, dict):
        raise SchemaError("missing field basis", field="basis")
    system = parse_system(basis.get("system"), "basis.system")
    aux = parse_aux(basis.get("aux", {"aux": "cubic"}), "basis.aux")
    sigma = parse_sigma(basis, "basis")
    polygon = parse_polygon(obj.get("polygon"), "polygon")
    if polygon.count != system.count:
        raise SchemaError(
            f"polygon has {polygon.count} points but the system needs {system.count}", field="polygon"
        )
    return CurveProblem(system=system, aux=aux, sigma=sigma, polygon=polygon)


def curve_csv(problem: CurveProblem, samples: int, sigmas=None) -> bytes:
    """t,x,y rows for one sigma; sigma,t,x,y rows when sweeping several."""
    if sigmas is None:
        ts, pts = sample_curve(ParametricCurve(problem.basis_at(), problem.polygon), samples)
        cols = [ts] + [pts[:, j] for j in range(pts.shape[1])]
        names = ["t"] + [("x", "y", "z")[j] if j < 3 else f"c{j}" for j in range(pts.shape[1])]
        return csv_bytes(names, cols)
    blocks_sig, blocks_t, blocks_xy = [], [], None
    for s in sigmas:
        ts, pts = sample_curve(ParametricCurve(problem.basis_at(float(s)), problem.polygon), samples)
        blocks_sig.append(np.full(ts.size, float(s)))
        blocks_t.append(ts)
        blocks_xy = [pts] if blocks_xy is None else blocks_xy + [pts]
    allpts = np.vstack(blocks_xy)
    cols = [np.concatenate(blocks_sig), np.concatenate(blocks_t)] + [
        allpts[:, j] for j in range(allpts.shape[1])
    ]
    names = ["sigma", "t"] + [("x", "y", "z")[j] if j < 3 else f"c{j}" for j in range(allpts.shape[1])]
    return csv_bytes(names, cols)


_PALETTE = ("#1f6f8b", "#b43b3b", "#3b8b4f", "#8b6f1f", "#6f3b8b", "#3b4f8b", "#8b3b6f", "#4f8b3b", "#8b4f3b", "#3b8b8b")


def curve_scene(problem: CurveProblem, samples: int, sigmas=None) -> SceneSpec:
    """Sampled curve(s) with the control polygon dashed underneath (2-D only)."""
    if problem.polygon.dim != 2:
        raise SchemaError("SVG rendering needs 2-D polygons", field="polygon")
    values = [problem.sigma] if sigmas is None else [float(s) for s in sigmas]
    lines = [
        Polyline(
            points=tuple(map(tuple, problem.polygon.points)),
            stroke="#999999",
            width=1.0,
            dash="5 4",
        )
    ]
    for j, s in enumerate(values):
        _, pts = sample_curve(ParametricCurve(problem.basis_at(s), problem.polygon), samples)
        lines.append(Polyline(points=tuple(map(tuple, pts)), stroke=_PALETTE[j % len(_PALETTE)]))
    markers = (MarkerSet(points=tuple(map(tuple, problem.polygon.points))),)
    return SceneSpec(polylines=tuple(lines), markers=markers)


# -- interpolation problems ---------------------------------------------------

_STRATEGIES = {"c1": ("sol1",), "c2": ("appendix_c", "remark")}


@dataclass(frozen=True)
class InterpProblem:
    data: MonotoneDataset
    mode: str  # "c1" | "c2"
    strategy: str  # "sol1" | "appendix_c" | "remark"
    sigma: float
    s: float | None = None
    zeta: float | None = None
    eta: float | None = None
    aux: AuxiliaryFunction | None = None


@dataclass(frozen=True)
class InterpResult:
    problem: InterpProblem
    solution: C1Solution | C2Solution
    curve: PiecewiseCurve
    bounds: dict = field(default_factory=dict)


def parse_interp_problem(obj) -> InterpProblem:
    """Wire schema: dataset, mode, solution_strategy, spacing value(s), sigma, optional aux."""
    if not isinstance(obj, dict):
        raise SchemaError("problem must be an object", field="problem")
    ds = obj.get("dataset")
    if not isinstance(ds, list) or not ds:
        raise SchemaError("dataset must be a non-empty array of [x, f] pairs", field="dataset")
    for i, p in enumerate(ds):
        if (
            not isinstance(p, list)
            or len(p) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in p)
        ):
            raise SchemaError(f"dataset[{i}] must be a [x, f] number pair", field=f"dataset[{i}]")
    arr = np.asarray(ds, dtype=float)
    data = MonotoneDataset(arr[:, 0], arr[:, 1])

    mode = obj.get("mode")
    if mode not in _STRATEGIES:
        raise SchemaError("mode must be 'c1' or 'c2'", field="mode")
    strategy = obj.get("solution_strategy", _STRATEGIES[mode][0])
    if strategy not in _STRATEGIES[mode]:
        raise SchemaError(
            f"solution_strategy for mode {mode!r} must be one of {', '.join(_STRATEGIES[mode])}",
            field="solution_strategy",
        )
    sigma = _num(obj, "sigma", "problem")
    aux = parse_aux(obj["aux"], "aux") if "aux" in obj else None

    s = zeta = eta = None
    if strategy == "remark":
        zeta = _num(obj, "zeta", "problem")
        eta = _num(obj, "eta", "problem")
    else:
        s = _num(obj, "s", "problem")
    return InterpProblem(data=data, mode=mode, strategy=strategy, sigma=sigma, s=s, zeta=zeta, eta=eta, aux=aux)


def solve_interp_problem(problem: InterpProblem) -> InterpResult:
    data = problem.data
    if problem.mode == "c1":
        bounds = {"s": c1_s_bound(data)}
        sol = c1_feasible_solution(data, problem.s)
        curve = c1_interpolant(data, sol, problem.sigma, problem.aux)
    elif problem.strategy == "appendix_c":
        bounds = {"s": c2_s_bound(data)}
        sol = c2_appendix_solution(data, problem.s)
        curve = c2_interpolant(data, sol, problem.sigma, problem.aux)
    else:
        b = c2_zeta_eta_bound(data)
        bounds = {"zeta": b, "eta": b}
        sol = c2_remark_solution(data, problem.zeta, problem.eta)
        curve = c2_interpolant(data, sol, problem.sigma, problem.aux)
    return InterpResult(problem=problem, solution=sol, curve=curve, bounds=bounds)


def interp_csv(result: InterpResult, samples: int) -> bytes:
    xs, ys = sample_interpolant(result.curve, samples)
    return csv_bytes(["x", "y"], [xs, ys])


def interp_report(result: InterpResult, reference=None) -> dict:
    """Continuity/violation report plus an optional error profile against (x, y) pairs."""
    from .interpolation import c1_constraint_check, c2_constraint_check

    if isinstance(result.solution, C1Solution):
        violations = c1_constraint_check(result.problem.data, result.solution)
    else:
        violations = c2_constraint_check(result.problem.data, result.solution)
    out = {
        "bounds": {k: float(v) for k, v in result.bounds.items()},
        "violations": [v.as_dict() for v in violations],
    }
    if result.curve.degenerate:
        out["continuity"] = {"degenerate": True}
    else:
        cont = {"order1": continuity_report(result.curve, 1).tolist()}
        if result.curve.smoothness_order >= 2:
            cont["order2"] = continuity_report(result.curve, 2).tolist()
        out["continuity"] = cont
    if reference is not None:
        out["error_profile"] = error_profile(result.curve, reference).as_dict()
    return out


def interp_scene(result: InterpResult, samples: int) -> SceneSpec:
    xs, ys = sample_interpolant(result.curve, samples)
    data = result.problem.data
    return SceneSpec(
        polylines=(Polyline(points=tuple(zip(xs, ys))),),
        markers=(MarkerSet(points=tuple(zip(data.x, data.f))),),
    )


def json_document(obj) -> bytes:
    """Stable JSON encoding shared by CLI and service responses."""
    return (json.dumps(obj, indent=2, sort_keys=True) + "\n").encode("utf-8")
