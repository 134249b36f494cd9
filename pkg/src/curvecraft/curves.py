"""Bezier-like curves over enhanced bases: evaluation, hodographs, lengths, shape checks.

A curve is a control polygon paired with an enhanced basis of matching count:
C(t) = sum_i T_i(t) P_i.  The identity

    C(t) = (1 - sigma) [(1 - phi) P_0 + phi P_n] + sigma sum_i F_i(t) P_i

makes every curve point an affine path in sigma between the chord point and
the sigma = 1 curve point; ``convex_combination_residual`` and
``sigma_path_residual`` measure both facts independently of the evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .auxiliary import AuxiliaryFunction
from .basis import EnhancedBasis, build
from .basis import derivative_all as basis_derivative_all
from .basis import evaluate_all as basis_evaluate_all
from .blending import BlendingSystem
from .blending import evaluate_all as system_evaluate_all
from .errors import InvalidParameterError

__all__ = [
    "ControlPolygon",
    "ParametricCurve",
    "evaluate_curve",
    "sample_curve",
    "hodograph",
    "polygon_length",
    "curve_length",
    "convex_combination_residual",
    "point_path",
    "sigma_path_residual",
    "monotone_combination_min_slope",
    "tangent_cone_slack",
]


@dataclass(frozen=True)
class ControlPolygon:
    """Ordered control points, shape (count, dim), dim >= 2, immutable."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 2 or pts.shape[1] < 2:
            raise InvalidParameterError(
                f"polygon needs shape (count >= 2, dim >= 2), got {pts.shape}", field="polygon"
            )
        if not np.all(np.isfinite(pts)):
            raise InvalidParameterError("polygon coordinates must be finite", field="polygon")
        pts = pts.copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def count(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class ParametricCurve:
    basis: EnhancedBasis
    polygon: ControlPolygon

    def __post_init__(self):
        if self.polygon.count != self.basis.count:
            raise InvalidParameterError(
                f"polygon has {self.polygon.count} points but the basis needs {self.basis.count}",
                field="polygon",
            )


def evaluate_curve(curve: ParametricCurve, t) -> np.ndarray:
    """Point(s) on the curve: shape (dim,) for scalar t, else (len(t), dim)."""
    T = basis_evaluate_all(curve.basis, t)
    if T.ndim == 1:
        return T @ curve.polygon.points
    return T.T @ curve.polygon.points


def hodograph(curve: ParametricCurve, t, order: int = 1) -> np.ndarray:
    """Derivative vector(s) of the curve, shaped like ``evaluate_curve``."""
    D = basis_derivative_all(curve.basis, t, order)
    if D.ndim == 1:
        return D @ curve.polygon.points
    return D.T @ curve.polygon.points


def sample_curve(curve: ParametricCurve, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """(t grid, points) for a uniform parameter sweep; samples >= 2."""
    if samples < 2:
        raise InvalidParameterError("samples must be >= 2", field="samples")
    ts = np.linspace(0.0, 1.0, int(samples))
    return ts, evaluate_curve(curve, ts)


def polygon_length(polygon: ControlPolygon) -> float:
    diffs = np.diff(polygon.points, axis=0)
    return float(np.linalg.norm(diffs, axis=1).sum())


def curve_length(curve: ParametricCurve, panels: int = 16, nodes: int = 8) -> float:
    """Arc length by composite Gauss-Legendre quadrature on the hodograph norm."""
    if panels < 1 or nodes < 2:
        raise InvalidParameterError("need panels >= 1 and nodes >= 2", field="panels")
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    ts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    speed = np.linalg.norm(hodograph(curve, ts), axis=1).reshape(panels, nodes)
    return float((speed @ w * half).sum())


def convex_combination_residual(
    system: BlendingSystem,
    aux: AuxiliaryFunction,
    polygon: ControlPolygon,
    sigma: float,
    t,
) -> float:
    """Max distance between the basis-evaluated curve and its two-route decomposition.

    Route one evaluates sum_i T_i P_i through the enhanced rows; route two
    assembles (1 - sigma)[(1 - phi) P_0 + phi P_n] + sigma sum_i F_i P_i from
    the raw system and auxiliary.  Both must agree to rounding error.
    """
    curve = ParametricCurve(build(system, aux, sigma), polygon)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    via_basis = evaluate_curve(curve, ts)

    F = system_evaluate_all(system, ts)
    phi = aux.value(ts)
    P = polygon.points
    chord = np.outer(1.0 - phi, P[0]) + np.outer(phi, P[-1])
    via_parts = (1.0 - sigma) * chord + sigma * (F.T @ P)
    return float(np.linalg.norm(via_basis - via_parts, axis=1).max())


def point_path(
    system: BlendingSystem,
    aux: AuxiliaryFunction,
    polygon: ControlPolygon,
    t: float,
    sigmas,
) -> np.ndarray:
    """Points C_sigma(t) for each sigma in ``sigmas``; shape (len(sigmas), dim)."""
    out = []
    for sigma in np.asarray(sigmas, dtype=float):
        curve = ParametricCurve(build(system, aux, float(sigma)), polygon)
        out.append(evaluate_curve(curve, float(t)))
    return np.asarray(out)


def sigma_path_residual(
    system: BlendingSystem,
    aux: AuxiliaryFunction,
    polygon: ControlPolygon,
    t: float,
    sigmas,
) -> float:
    """Max deviation of C_sigma(t) from the segment between the sigma=0 and sigma=1 points."""
    sigmas = np.asarray(sigmas, dtype=float)
    pts = point_path(system, aux, polygon, t, sigmas)
    lo = evaluate_curve(ParametricCurve(build(system, aux, 0.0), polygon), float(t))
    hi = evaluate_curve(ParametricCurve(build(system, aux, 1.0), polygon), float(t))
    expected = np.outer(1.0 - sigmas, lo) + np.outer(sigmas, hi)
    return float(np.linalg.norm(pts - expected, axis=1).max())


def monotone_combination_min_slope(basis: EnhancedBasis, betas, grid_size: int = 1001) -> float:
    """Min over a grid of d/dt sum_i beta_i T_i for nondecreasing coefficients.

    Only meaningful when the system preserves monotonicity and the auxiliary
    is increasing; both flags are enforced.
    """
    if not basis.system.monotonicity_preserving:
        raise InvalidParameterError(
            f"system {basis.system.label()!r} is not flagged monotonicity_preserving",
            field="system",
        )
    if not basis.aux.increasing:
        raise InvalidParameterError(
            f"auxiliary {basis.aux.label()!r} is not flagged increasing", field="aux"
        )
    betas = np.asarray(betas, dtype=float)
    if betas.shape != (basis.count,):
        raise InvalidParameterError(
            f"need {basis.count} coefficients, got shape {betas.shape}", field="betas"
        )
    if np.any(np.diff(betas) < 0.0):
        raise InvalidParameterError("coefficients must be nondecreasing", field="betas")
    grid = np.linspace(0.0, 1.0, grid_size)
    slope = betas @ basis_derivative_all(basis, grid, 1)
    return float(slope.min())


def tangent_cone_slack(curve: ParametricCurve, grid_size: int = 101) -> float:
    """Min coefficient when expanding tangents over the extreme polygon side pair.

    2-D only.  The polygon's side vectors must span a proper cone (angular
    spread < pi); the hodograph at each grid point is solved against the two
    extreme side directions, and the smallest coefficient over the sweep is
    returned (>= 0 means every tangent stays inside the cone).
    """
    P = curve.polygon.points
    if P.shape[1] != 2:
        raise InvalidParameterError("cone check is 2-D only", field="polygon")
    sides = np.diff(P, axis=0)
    norms = np.linalg.norm(sides, axis=1)
    if np.any(norms == 0.0):
        raise InvalidParameterError("degenerate (zero-length) polygon side", field="polygon")
    dirs = sides / norms[:, None]
    ref = dirs[0]
    # signed angles relative to the first side; a proper cone keeps them in (-pi/2, pi/2)-ish span < pi
    ang = np.arctan2(dirs[:, 1] * ref[0] - dirs[:, 0] * ref[1], dirs @ ref)
    if ang.max() - ang.min() >= np.pi:
        raise InvalidParameterError("polygon sides do not span a proper cone", field="polygon")
    u = dirs[int(np.argmin(ang))]
    v = dirs[int(np.argmax(ang))]
    M = np.column_stack([u, v])
    det = np.linalg.det(M)
    grid = np.linspace(0.0, 1.0, grid_size)
    H = hodograph(curve, grid)
    if abs(det) < 1e-14:
        # all sides parallel: tangents must be nonnegative multiples of u
        coeff = H @ u
        off_axis = np.abs(H - np.outer(coeff, u)).max()
        return float(min(coeff.min(), -off_axis if off_axis > 1e-9 else coeff.min()))
    ab = np.linalg.solve(M, H.T)
    return float(ab.min())
