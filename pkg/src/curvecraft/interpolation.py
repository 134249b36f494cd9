"""Monotonicity-preserving C1/C2 interpolation of monotone data.

Each data interval [x_i, x_{i+1}] carries one Bezier-like segment over an
enhanced Bernstein basis (degree 3 for C1, degree 5 for C2) whose control
points interpolate the data at the ends.  The interior control coordinates are
the unknowns of a linear constraint system: reflection equalities across each
knot give derivative continuity, and per-segment orderings keep each segment
monotone in x and nondecreasing in y.  Closed-form feasible solutions are
provided for both orders, plus the spread-out C2 variant that trades the
simple uniform construction for lower interpolation error.

Feasibility windows (min over data gaps g_i):

* C1 uniform:        0 < s < min(g)/2
* C2 uniform:        0 < s < min(g_0/3, interior g/2, g_last/3)
* C2 spread (zeta, eta): 0 < zeta, eta < min(g)/4, with the eta orderings
  additionally constrained by the f-gaps (validated post hoc).

Constructed solutions are re-checked against the raw constraint lists before
being returned, so an infeasible request fails loudly with its bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .auxiliary import AuxiliaryFunction, cubic, quintic
from .basis import build
from .blending import bernstein
from .curves import ControlPolygon, ParametricCurve, evaluate_curve, hodograph
from .errors import DomainError, InfeasibleParameterError, InvalidParameterError

__all__ = [
    "MonotoneDataset",
    "random_monotone_dataset",
    "ConstraintViolation",
    "C1Solution",
    "C2Solution",
    "PiecewiseCurve",
    "ErrorProfile",
    "c1_s_bound",
    "c1_feasible_solution",
    "c1_constraint_check",
    "c1_interpolant",
    "c2_s_bound",
    "c2_appendix_solution",
    "c2_zeta_eta_bound",
    "c2_remark_solution",
    "c2_constraint_check",
    "c2_interpolant",
    "evaluate_as_function",
    "function_values",
    "sample_interpolant",
    "continuity_report",
    "error_profile",
]

EQ_TOL = 1e-12


@dataclass(frozen=True)
class MonotoneDataset:
    """Strictly increasing abscissae with nondecreasing ordinates."""

    x: np.ndarray
    f: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        f = np.asarray(self.f, dtype=float)
        if x.ndim != 1 or f.ndim != 1 or x.size != f.size:
            raise InvalidParameterError("x and f must be 1-D arrays of equal length", field="dataset")
        if x.size < 2:
            raise InvalidParameterError("need at least two data points", field="dataset")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(f))):
            raise InvalidParameterError("data values must be finite", field="dataset")
        if np.any(np.diff(x) <= 0.0):
            raise InvalidParameterError("x must be strictly increasing", field="dataset")
        if np.any(np.diff(f) < 0.0):
            raise InvalidParameterError("f must be nondecreasing", field="dataset")
        x = x.copy()
        f = f.copy()
        x.flags.writeable = False
        f.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "f", f)

    @property
    def n_segments(self) -> int:
        return self.x.size - 1

    @property
    def strict(self) -> bool:
        return bool(np.all(np.diff(self.f) > 0.0))


def random_monotone_dataset(seed: int, n_segments: int, strict: bool = True) -> MonotoneDataset:
    """Seeded random dataset with n_segments intervals.

    Strict datasets draw f-gaps proportional to the x-gaps (factor in
    [1, 2.5]) so that all three feasible-solution constructors succeed at 0.9
    of their bounds; non-strict datasets zero out a third of the f-gaps.
    """
    if n_segments < 1:
        raise InvalidParameterError("n_segments must be >= 1", field="n_segments")
    rng = np.random.default_rng(seed)
    gaps = rng.uniform(0.2, 1.2, n_segments)
    if strict:
        fgaps = gaps * rng.uniform(1.0, 2.5, n_segments)
    else:
        fgaps = gaps * rng.uniform(0.1, 2.0, n_segments)
        fgaps[rng.random(n_segments) < 0.34] = 0.0
    x0 = rng.uniform(-2.0, 2.0)
    f0 = rng.uniform(-2.0, 2.0)
    x = np.concatenate([[x0], x0 + np.cumsum(gaps)])
    f = np.concatenate([[f0], f0 + np.cumsum(fgaps)])
    return MonotoneDataset(x, f)


@dataclass(frozen=True)
class ConstraintViolation:
    kind: str  # "equality" | "ordering"
    index: int  # segment or junction index
    message: str
    residual: float

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "index": int(self.index),
            "message": self.message,
            "residual": float(self.residual),
        }


@dataclass(frozen=True)
class C1Solution:
    """Per-segment interior control coordinates for cubic segments.

    inner_x[i] = (h_i, t_i) and inner_y[i] = (g_i, z_i): segment i runs
    through (x_i, f_i), (h_i, g_i), (t_i, z_i), (x_{i+1}, f_{i+1}).
    """

    inner_x: np.ndarray  # (n_segments, 2)
    inner_y: np.ndarray  # (n_segments, 2)
    s: float | None = None

    def as_dict(self) -> dict:
        d = {"inner_x": self.inner_x.tolist(), "inner_y": self.inner_y.tolist()}
        if self.s is not None:
            d["s"] = float(self.s)
        return d


@dataclass(frozen=True)
class C2Solution:
    """Per-segment interior control coordinates for quintic segments.

    inner_x[i] = (h_i, t_i, w_i, d_i) and inner_y[i] = (g_i, z_i, k_i, c_i).
    """

    inner_x: np.ndarray  # (n_segments, 4)
    inner_y: np.ndarray  # (n_segments, 4)
    s: float | None = None
    zeta: float | None = None
    eta: float | None = None

    def as_dict(self) -> dict:
        d = {"inner_x": self.inner_x.tolist(), "inner_y": self.inner_y.tolist()}
        for name in ("s", "zeta", "eta"):
            v = getattr(self, name)
            if v is not None:
                d[name] = float(v)
        return d


def _tol(data: MonotoneDataset) -> float:
    scale = max(1.0, float(np.abs(data.x).max()), float(np.abs(data.f).max()))
    return EQ_TOL * scale


# -- C1 -----------------------------------------------------------------------


def c1_s_bound(data: MonotoneDataset) -> float:
    """Upper bound of the admissible spacing: half the smallest x-gap."""
    return float(np.diff(data.x).min() / 2.0)


def _check_spacing(value: float, bound: float, name: str) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0.0 or value >= bound:
        raise InfeasibleParameterError(
            f"{name} must satisfy 0 < {name} < {bound:.17g}, got {value:.17g}",
            field=name,
            bound=bound,
        )
    return value


def c1_feasible_solution(data: MonotoneDataset, s: float) -> C1Solution:
    """Uniform-spacing solution of the C1 constraint system.

    Interior knots get (h_i, t_i) = (x_i + s, x_{i+1} - s) with reflected
    boundary segments; ordinates ride the data: (g_i, z_i) = (f_i, f_{i+1}).
    For a single segment the orderings additionally require s > gap/4; the
    post-hoc check raises in that case.
    """
    s = _check_spacing(s, c1_s_bound(data), "s")
    x, f = data.x, data.f
    n = data.n_segments
    h = x[:-1] + s
    t = x[1:] - s
    h[0] = x[1] - 2.0 * s
    t[n - 1] = x[n - 1] + 2.0 * s
    sol = C1Solution(
        inner_x=np.column_stack([h, t]),
        inner_y=np.column_stack([f[:-1], f[1:]]),
        s=s,
    )
    _raise_on_violations(c1_constraint_check(data, sol), "s", c1_s_bound(data))
    return sol


def c1_constraint_check(data: MonotoneDataset, sol: C1Solution) -> tuple[ConstraintViolation, ...]:
    """Verify the raw C1 constraint lists; empty tuple means feasible."""
    x, f = data.x, data.f
    n = data.n_segments
    hx, tx = sol.inner_x[:, 0], sol.inner_x[:, 1]
    gy, zy = sol.inner_y[:, 0], sol.inner_y[:, 1]
    tol = _tol(data)
    out: list[ConstraintViolation] = []

    for i in range(n - 1):
        r = tx[i] + hx[i + 1] - 2.0 * x[i + 1]
        if abs(r) > tol:
            out.append(ConstraintViolation("equality", i, f"abscissa reflection at knot {i + 1}", abs(r)))
        r = zy[i] + gy[i + 1] - 2.0 * f[i + 1]
        if abs(r) > tol:
            out.append(ConstraintViolation("equality", i, f"ordinate reflection at knot {i + 1}", abs(r)))

    for i in range(n):
        for name, lo, hi, strict in (
            ("x_i < h_i", x[i], hx[i], True),
            ("h_i < t_i", hx[i], tx[i], True),
            ("t_i < x_{i+1}", tx[i], x[i + 1], True),
            ("f_i <= g_i", f[i], gy[i], False),
            ("g_i <= z_i", gy[i], zy[i], False),
            ("z_i <= f_{i+1}", zy[i], f[i + 1], False),
        ):
            gap = hi - lo
            bad = gap <= 0.0 if strict else gap < -tol
            if bad:
                out.append(ConstraintViolation("ordering", i, f"segment {i}: {name}", float(max(0.0, -gap))))
    return tuple(out)


# -- C2 -----------------------------------------------------------------------


def c2_s_bound(data: MonotoneDataset) -> float:
    """Bound for the uniform C2 spacing: boundary gaps / 3, interior gaps / 2."""
    gaps = np.diff(data.x)
    bound = min(gaps[0] / 3.0, gaps[-1] / 3.0)
    if gaps.size > 2:
        bound = min(bound, gaps[1:-1].min() / 2.0)
    return float(bound)


def c2_appendix_solution(data: MonotoneDataset, s: float) -> C2Solution:
    """Uniform-spacing C2 solution; knot ordinates are repeated data values.

    Interior junctions place (d_i, h_{i+1}) = (x_{i+1} -+ s/2); the curvature
    reflection then fixes the d/h values from (w_i, t_{i+1}).  Ordinates
    collapse to (g, z) = f_i and (k, c) = f_{i+1}, which satisfies the
    nondecreasing chain for any monotone data (strictness not required).
    """
    s = _check_spacing(s, c2_s_bound(data), "s")
    x, f = data.x, data.f
    n = data.n_segments
    w = x[1:] - s
    t = x[:-1] + s
    w[n - 1] = x[n - 1] + 2.0 * s
    t[0] = x[1] - 2.0 * s
    d = np.empty(n)
    h = np.empty(n)
    d[n - 1] = x[n - 1] + 3.0 * s
    h[0] = x[1] - 3.0 * s
    if n > 1:
        d[: n - 1] = x[1:n] + 0.25 * w[: n - 1] - 0.25 * t[1:n]
        h[1:] = x[1:n] - 0.25 * w[: n - 1] + 0.25 * t[1:n]
    sol = C2Solution(
        inner_x=np.column_stack([h, t, w, d]),
        inner_y=np.column_stack([f[:-1], f[:-1], f[1:], f[1:]]),
        s=s,
    )
    _raise_on_violations(c2_constraint_check(data, sol), "s", c2_s_bound(data))
    return sol


def c2_zeta_eta_bound(data: MonotoneDataset) -> float:
    """Shared bound for the spread C2 solution: a quarter of the smallest x-gap."""
    return float(np.diff(data.x).min() / 4.0)


def c2_remark_solution(data: MonotoneDataset, zeta: float, eta: float) -> C2Solution:
    """Spread-spacing C2 solution with distinct abscissa/ordinate offsets.

    Interior rows: (h, t, w, d)_i = (x_i + z, x_i + 2.5 z, x_{i+1} - 1.5 z,
    x_{i+1} - z) and (g, z, k, c)_i = (f_i + e, f_i + 1.5 e, f_{i+1} - 2.5 e,
    f_{i+1} - e); boundary segments reflect.  Requires strictly increasing
    ordinates, and the eta orderings depend on the f-gaps, so the constructed
    values are checked and an infeasible eta raises with the binding
    violation.
    """
    if not data.strict:
        raise InvalidParameterError(
            "the spread C2 solution needs strictly increasing ordinates", field="dataset"
        )
    bound = c2_zeta_eta_bound(data)
    zeta = _check_spacing(zeta, bound, "zeta")
    eta = _check_spacing(eta, bound, "eta")
    x, f = data.x, data.f
    n = data.n_segments

    h = x[:-1] + zeta
    t = x[:-1] + 2.5 * zeta
    w = x[1:] - 1.5 * zeta
    d = x[1:] - zeta
    h[0] = x[1] - 2.5 * zeta
    t[0] = x[1] - 2.0 * zeta
    w[n - 1] = x[n - 1] + 3.0 * zeta
    d[n - 1] = x[n - 1] + 3.5 * zeta

    g = f[:-1] + eta
    z = f[:-1] + 1.5 * eta
    k = f[1:] - 2.5 * eta
    c = f[1:] - eta
    g[0] = f[1] - 3.5 * eta
    z[0] = f[1] - 3.0 * eta
    k[n - 1] = f[n - 1] + 2.0 * eta
    c[n - 1] = f[n - 1] + 2.5 * eta

    sol = C2Solution(
        inner_x=np.column_stack([h, t, w, d]),
        inner_y=np.column_stack([g, z, k, c]),
        zeta=zeta,
        eta=eta,
    )
    _raise_on_violations(c2_constraint_check(data, sol), "eta", bound)
    return sol


def c2_constraint_check(data: MonotoneDataset, sol: C2Solution) -> tuple[ConstraintViolation, ...]:
    """Verify the raw C2 constraint lists; empty tuple means feasible."""
    x, f = data.x, data.f
    n = data.n_segments
    hx, tx, wx, dx = (sol.inner_x[:, j] for j in range(4))
    gy, zy, ky, cy = (sol.inner_y[:, j] for j in range(4))
    tol = _tol(data)
    out: list[ConstraintViolation] = []

    for i in range(n - 1):
        for label, r in (
            (f"abscissa reflection at knot {i + 1}", dx[i] + hx[i + 1] - 2.0 * x[i + 1]),
            (f"ordinate reflection at knot {i + 1}", cy[i] + gy[i + 1] - 2.0 * f[i + 1]),
            (f"abscissa curvature reflection at knot {i + 1}", 2.0 * dx[i] - 2.0 * hx[i + 1] - (wx[i] - tx[i + 1])),
            (f"ordinate curvature reflection at knot {i + 1}", 2.0 * cy[i] - 2.0 * gy[i + 1] - (ky[i] - zy[i + 1])),
        ):
            if abs(r) > tol:
                out.append(ConstraintViolation("equality", i, label, abs(float(r))))

    for i in range(n):
        xs = (x[i], hx[i], tx[i], wx[i], dx[i], x[i + 1])
        names = ("x_i", "h_i", "t_i", "w_i", "d_i", "x_{i+1}")
        for j in range(5):
            gap = xs[j + 1] - xs[j]
            if gap <= 0.0:
                out.append(
                    ConstraintViolation("ordering", i, f"segment {i}: {names[j]} < {names[j + 1]}", float(max(0.0, -gap)))
                )
        ys = (f[i], gy[i], zy[i], ky[i], cy[i], f[i + 1])
        ynames = ("f_i", "g_i", "z_i", "k_i", "c_i", "f_{i+1}")
        for j in range(5):
            gap = ys[j + 1] - ys[j]
            if gap < -tol:
                out.append(
                    ConstraintViolation("ordering", i, f"segment {i}: {ynames[j]} <= {ynames[j + 1]}", float(-gap))
                )
    return tuple(out)


def _raise_on_violations(violations, field: str, bound: float):
    if violations:
        first = violations[0]
        raise InfeasibleParameterError(
            f"constructed solution violates its constraints ({first.message}; "
            f"residual {first.residual:.3e}); the {field} window for this dataset is tighter "
            f"than the generic bound {bound:.17g}",
            field=field,
            bound=bound,
        )


# -- piecewise curves ---------------------------------------------------------


@dataclass(frozen=True)
class PiecewiseCurve:
    """One Bezier-like segment per data interval, sharing a single basis."""

    segments: tuple[ParametricCurve, ...]
    knots_x: np.ndarray
    knots_f: np.ndarray
    smoothness_order: int

    @property
    def degenerate(self) -> bool:
        return self.segments[0].basis.degenerate


def _assemble(
    data: MonotoneDataset,
    inner_x: np.ndarray,
    inner_y: np.ndarray,
    degree: int,
    aux: AuxiliaryFunction,
    sigma: float,
    order: int,
) -> PiecewiseCurve:
    if not aux.increasing:
        raise InvalidParameterError(
            f"interpolation needs an increasing auxiliary, {aux.label()!r} is not", field="aux"
        )
    b = build(bernstein(degree), aux, sigma)
    segs = []
    for i in range(data.n_segments):
        xs = np.concatenate([[data.x[i]], inner_x[i], [data.x[i + 1]]])
        ys = np.concatenate([[data.f[i]], inner_y[i], [data.f[i + 1]]])
        segs.append(ParametricCurve(b, ControlPolygon(np.column_stack([xs, ys]))))
    return PiecewiseCurve(
        segments=tuple(segs),
        knots_x=data.x,
        knots_f=data.f,
        smoothness_order=order,
    )


def c1_interpolant(
    data: MonotoneDataset,
    sol: C1Solution,
    sigma: float,
    aux: AuxiliaryFunction | None = None,
) -> PiecewiseCurve:
    """Degree-3 piecewise curve through the data; C1 in x for sigma > 0."""
    if sol.inner_x.shape != (data.n_segments, 2):
        raise InvalidParameterError("solution does not match the dataset", field="solution")
    return _assemble(data, sol.inner_x, sol.inner_y, 3, aux or cubic(), sigma, order=1)


def c2_interpolant(
    data: MonotoneDataset,
    sol: C2Solution,
    sigma: float,
    aux: AuxiliaryFunction | None = None,
) -> PiecewiseCurve:
    """Degree-5 piecewise curve through the data; C2 in x for sigma > 0.

    The auxiliary must be C2-compatible (vanishing endpoint second
    derivative), otherwise the sigma-degenerate part would break the endpoint
    curvature pattern the junction equalities rely on.
    """
    if sol.inner_x.shape != (data.n_segments, 4):
        raise InvalidParameterError("solution does not match the dataset", field="solution")
    aux = aux or quintic()
    if not aux.c2_compatible:
        raise InvalidParameterError(
            f"auxiliary {aux.label()!r} is not C2-compatible (nonzero endpoint second derivative)",
            field="aux",
        )
    return _assemble(data, sol.inner_x, sol.inner_y, 5, aux, sigma, order=2)


# -- evaluation in x ----------------------------------------------------------


def _invert_segment(seg: ParametricCurve, xq: np.ndarray) -> np.ndarray:
    """Solve x(t) = xq per query by bisection on the monotone abscissa component."""
    lo = np.zeros_like(xq)
    hi = np.ones_like(xq)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        xm = evaluate_curve(seg, mid)[:, 0]
        take = xm < xq
        lo = np.where(take, mid, lo)
        hi = np.where(take, hi, mid)
    return 0.5 * (lo + hi)


def function_values(curve: PiecewiseCurve, xs) -> np.ndarray:
    """Interpolant values p(x) for x inside the data range (vectorized)."""
    xs = np.asarray(xs, dtype=float)
    flat = np.atleast_1d(xs).astype(float)
    x0, x1 = float(curve.knots_x[0]), float(curve.knots_x[-1])
    if flat.size and (not np.all(np.isfinite(flat)) or flat.min() < x0 - 1e-12 or flat.max() > x1 + 1e-12):
        raise DomainError(f"x must lie in [{x0:g}, {x1:g}]", field="x")
    flat = np.clip(flat, x0, x1)
    idx = np.clip(np.searchsorted(curve.knots_x, flat, side="right") - 1, 0, len(curve.segments) - 1)
    out = np.empty_like(flat)
    for i in np.unique(idx):
        mask = idx == i
        ts = _invert_segment(curve.segments[i], flat[mask])
        out[mask] = evaluate_curve(curve.segments[i], ts)[:, 1]
    return out.reshape(np.shape(xs))


def evaluate_as_function(curve: PiecewiseCurve, x: float) -> float:
    return float(function_values(curve, float(x)))


def sample_interpolant(curve: PiecewiseCurve, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """(x grid, p(x)) on a uniform grid over the data range."""
    if samples < 2:
        raise InvalidParameterError("samples must be >= 2", field="samples")
    xs = np.linspace(float(curve.knots_x[0]), float(curve.knots_x[-1]), int(samples))
    return xs, function_values(curve, xs)


def continuity_report(curve: PiecewiseCurve, order: int = 1) -> np.ndarray:
    """Per-interior-knot jump of the order-th derivative of p with respect to x.

    One-sided values come from the closed-form parametric derivatives via
    p' = y'/x' and p'' = (y'' x' - y' x'') / x'^3.  The sigma = 0 degenerate
    curve has vanishing parametric speed at the knots and is rejected.
    """
    if order not in (1, 2):
        raise InvalidParameterError("order must be 1 or 2", field="order")
    if order > curve.smoothness_order:
        raise InvalidParameterError(
            f"curve is only C{curve.smoothness_order}; order {order} jumps are not meaningful",
            field="order",
        )
    if curve.degenerate:
        raise DomainError("sigma = 0 interpolants have vanishing parametric speed at the knots")

    def dpdx(seg: ParametricCurve, t: float) -> float:
        v1 = hodograph(seg, t, 1)
        if order == 1:
            return float(v1[1] / v1[0])
        v2 = hodograph(seg, t, 2)
        return float((v2[1] * v1[0] - v1[1] * v2[0]) / v1[0] ** 3)

    jumps = []
    for i in range(len(curve.segments) - 1):
        left = dpdx(curve.segments[i], 1.0)
        right = dpdx(curve.segments[i + 1], 0.0)
        jumps.append(abs(left - right))
    return np.asarray(jumps)


@dataclass(frozen=True)
class ErrorProfile:
    xs: np.ndarray
    errors: np.ndarray
    max_error: float
    rms_error: float

    def as_dict(self) -> dict:
        return {
            "max_error": float(self.max_error),
            "rms_error": float(self.rms_error),
            "xs": self.xs.tolist(),
            "errors": self.errors.tolist(),
        }


def error_profile(curve: PiecewiseCurve, reference) -> ErrorProfile:
    """Pointwise |p(x) - y_ref| against reference (x, y) pairs."""
    ref = np.asarray(reference, dtype=float)
    if ref.ndim != 2 or ref.shape[1] != 2 or ref.shape[0] < 1:
        raise InvalidParameterError("reference must be an (m, 2) array of (x, y) pairs", field="reference")
    xs = ref[:, 0]
    errs = np.abs(function_values(curve, xs) - ref[:, 1])
    return ErrorProfile(
        xs=xs,
        errors=errs,
        max_error=float(errs.max()),
        rms_error=float(np.sqrt(np.mean(errs**2))),
    )
