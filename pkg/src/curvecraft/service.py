"""HTTP service over the curve kernel.

Endpoints:

* ``GET /api/bases``        catalog of the blending families and their parameters
* ``GET /api/aux``          catalog of the auxiliary functions and their flags
* ``POST /api/curve``       curve problem: samples, optionally per-sigma sweep
* ``POST /api/interpolate`` monotone interpolation problem: solution + samples

POST bodies are JSON.  Responses are JSON unless the body asks for
``"format": "csv"``, in which case the payload is exactly the CSV the CLI
would print for the same problem.  Errors are JSON objects with ``code``,
``field`` and ``message``; schema and domain errors map to 400, feasibility
failures map to 422 and include the violated ``bound``.
"""

from __future__ import annotations

import json
import sys
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np

from . import render as R
from .errors import (
    CurveCraftError,
    DomainError,
    InfeasibleParameterError,
    InvalidParameterError,
    SchemaError,
)
from .interpolation import sample_interpolant

__all__ = ["make_server", "serve", "DEFAULT_PORT"]

DEFAULT_PORT = 8720
_CURVE_SAMPLES = 201
_INTERP_SAMPLES = 501
_MAX_BODY = 4 * 1024 * 1024
_MAX_SAMPLES = 20001

BASES_CATALOG = {
    "families": [
        {
            "family": "bernstein",
            "params": [{"name": "degree", "kind": "int", "min": 1, "max": 60}],
            "monotonicity_preserving": True,
        },
        {
            "family": "p_bezier",
            "params": [{"name": "gamma", "kind": "float", "min": 0.0, "max": 1.0}],
            "monotonicity_preserving": False,
        },
        {
            "family": "lambda_mu",
            "params": [
                {"name": "lambda", "kind": "float", "min": 0.0},
                {"name": "mu", "kind": "float", "min": 0.0},
            ],
            "monotonicity_preserving": False,
        },
        {
            "family": "yan_cubic",
            "params": [{"name": "lambda", "kind": "float", "min": -1.0, "max": 1.0}],
            "monotonicity_preserving": False,
        },
    ]
}

AUX_CATALOG = {
    "aux": [
        {"aux": "cubic", "params": [], "increasing": True, "c2_compatible": False},
        {"aux": "quintic", "params": [], "increasing": True, "c2_compatible": True},
        {
            "aux": "bernstein_tail",
            "params": [{"name": "n", "kind": "odd_int", "min": 3, "max": 25}],
            "increasing": True,
            "c2_compatible": "n >= 5",
        },
        {
            "aux": "trig",
            "params": [{"name": "k", "kind": "odd_int", "min": 1, "max": 99}],
            "increasing": "k == 1",
            "c2_compatible": False,
        },
        {"aux": "expo_rational", "params": [], "increasing": True, "c2_compatible": False},
        {"aux": "pseudo_psi", "params": [], "increasing": True, "c2_compatible": False},
    ]
}


def _error_body(code: str, message: str, field=None, bound=None) -> bytes:
    doc = {"code": code, "message": message, "field": field}
    if bound is not None:
        doc["bound"] = float(bound)
    return R.json_document(doc)


def _int_field(body, key, default, upper):
    v = body.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{key} must be an integer", field=key)
    if not 2 <= v <= upper:
        raise SchemaError(f"{key} must be between 2 and {upper}", field=key)
    return v


def _handle_curve(body) -> tuple[bytes, str]:
    prob = R.parse_curve_problem(body)
    samples = _int_field(body, "samples", _CURVE_SAMPLES, _MAX_SAMPLES)
    sigmas = None
    if "sigmas" in body:
        raw = body["sigmas"]
        if (
            not isinstance(raw, list)
            or not raw
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in raw)
        ):
            raise SchemaError("sigmas must be a non-empty array of numbers", field="sigmas")
        sigmas = [float(v) for v in raw]

    if body.get("format") == "csv":
        return R.curve_csv(prob, samples, sigmas), "text/csv; charset=utf-8"

    ts = np.linspace(0.0, 1.0, samples)
    curves = []
    for s in [prob.sigma] if sigmas is None else sigmas:
        from .curves import ParametricCurve, sample_curve

        _, pts = sample_curve(ParametricCurve(prob.basis_at(float(s)), prob.polygon), samples)
        curves.append({"sigma": float(s), "points": pts.tolist()})
    return R.json_document({"t": ts.tolist(), "curves": curves}), "application/json"


def _handle_interpolate(body) -> tuple[bytes, str]:
    prob = R.parse_interp_problem(body)
    samples = _int_field(body, "samples", _INTERP_SAMPLES, _MAX_SAMPLES)
    result = R.solve_interp_problem(prob)

    if body.get("format") == "csv":
        return R.interp_csv(result, samples), "text/csv; charset=utf-8"

    reference = None
    if "reference" in body:
        raw = body["reference"]
        if (
            not isinstance(raw, list)
            or not raw
            or any(not isinstance(p, list) or len(p) != 2 for p in raw)
        ):
            raise SchemaError("reference must be an array of [x, y] pairs", field="reference")
        reference = np.asarray(raw, dtype=float)

    xs, ys = sample_interpolant(result.curve, samples)
    doc = {
        "solution": result.solution.as_dict(),
        "bounds": {k: float(v) for k, v in result.bounds.items()},
        "samples": {"x": xs.tolist(), "y": ys.tolist()},
        "report": R.interp_report(result, reference),
    }
    return R.json_document(doc), "application/json"


class _Handler(BaseHTTPRequestHandler):
    server_version = "curvecraft"
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default
        if self.server.verbose:  # type: ignore[attr-defined]
            sys.stderr.write(f"{self.address_string()} {fmt % args}\n")

    def _send(self, status: int, payload: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(payload)

    def _send_error(self, status: int, code: str, message: str, field=None, bound=None) -> None:
        self._send(status, _error_body(code, message, field, bound), "application/json")

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        if self.path == "/api/bases":
            self._send(200, R.json_document(BASES_CATALOG), "application/json")
        elif self.path == "/api/aux":
            self._send(200, R.json_document(AUX_CATALOG), "application/json")
        elif self.path == "/api/health":
            self._send(200, R.json_document({"status": "ok"}), "application/json")
        else:
            self._send_error(404, "not_found", f"no route for GET {self.path}")

    def do_POST(self):
        handlers = {"/api/curve": _handle_curve, "/api/interpolate": _handle_interpolate}
        handler = handlers.get(self.path)
        if handler is None:
            self._send_error(404, "not_found", f"no route for POST {self.path}")
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError:
            self._send_error(400, "schema_error", "bad Content-Length header")
            return
        if length <= 0 or length > _MAX_BODY:
            self._send_error(400, "schema_error", "request body missing or too large")
            return
        raw = self.rfile.read(length)
        try:
            body = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            self._send_error(400, "schema_error", f"body is not valid JSON: {exc}")
            return
        if not isinstance(body, dict):
            self._send_error(400, "schema_error", "body must be a JSON object")
            return
        try:
            payload, content_type = handler(body)
        except InfeasibleParameterError as exc:
            self._send_error(422, "infeasible_parameter", str(exc), exc.field, exc.bound)
        except SchemaError as exc:
            self._send_error(400, "schema_error", str(exc), exc.field)
        except (InvalidParameterError, DomainError) as exc:
            self._send_error(400, "domain_error", str(exc), getattr(exc, "field", None))
        except CurveCraftError as exc:
            self._send_error(400, "domain_error", str(exc))
        except Exception as exc:  # noqa: BLE001
            sys.stderr.write(f"internal error: {exc!r}\n")
            self._send_error(500, "internal_error", "internal server error")
        else:
            self._send(200, payload, content_type)


def make_server(host: str = "127.0.0.1", port: int = 0, verbose: bool = False) -> ThreadingHTTPServer:
    """Bind a server without starting it; port 0 picks a free port (for tests)."""
    server = ThreadingHTTPServer((host, port), _Handler)
    server.verbose = verbose  # type: ignore[attr-defined]
    return server


def serve(host: str = "127.0.0.1", port: int = DEFAULT_PORT) -> None:
    server = make_server(host, port, verbose=True)
    sys.stderr.write(f"curvecraft service listening on http://{host}:{server.server_address[1]}/\n")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
