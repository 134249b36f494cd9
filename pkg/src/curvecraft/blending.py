"""Blending-function systems on [0, 1].

A blending system is a finite family F_0..F_n of functions sharing the algebraic
shape of the Bernstein basis: non-negative, summing to one, interpolating the
endpoints (F(0) = e_0, F(1) = e_n), and with first-derivative endpoint rows
(-m0, m0, 0, ...) and (0, ..., -m1, m1).  Four families are built in:

* ``bernstein(n)``       -- classic degree-n Bernstein polynomials, m = n.
* ``p_bezier(gamma)``    -- cubic radical family; gamma = 0 degenerates to the
                            piecewise-linear hat basis (curve == polygon),
                            gamma = 1 recovers cubic Bernstein.
* ``lambda_mu(lam, mu)`` -- cubic-exponential family with independent endpoint
                            tension; m0 = 3 + lam, m1 = 3 + mu.
* ``yan_cubic(lam)``     -- quintic-degree cubic-like family, lam in [-1, 1],
                            m = 3 + 2 lam; lam = 0 recovers cubic Bernstein.

``evaluate_all``/``derivative_all`` accept a scalar or 1-D array of parameter
values and return rows stacked in index order.  ``verify_blending_properties``
sweeps a grid and reports per-property worst residuals.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .errors import DomainError, InvalidParameterError
from .report import PropertyCheck, PropertyReport

__all__ = [
    "BlendingSystem",
    "bernstein",
    "p_bezier",
    "lambda_mu",
    "yan_cubic",
    "evaluate_all",
    "derivative_all",
    "verify_blending_properties",
]


@dataclass(frozen=True)
class BlendingSystem:
    """Immutable description of one blending family instance.

    ``tangency`` holds the endpoint derivative magnitudes (m0, m1).
    ``curvature`` holds the endpoint second-derivative pattern constants
    (omega0, omega1) where the order-2 rows are (w, -2w, w, 0, ...) and its
    mirror; ``None`` marks a family/parameter combination whose second
    derivatives do not follow that pattern.
    """

    family: str
    degree: int
    params: Mapping[str, float]
    symmetric: bool
    monotonicity_preserving: bool
    polynomial: bool
    tangency: tuple[float, float]
    curvature: tuple[float | None, float | None]

    @property
    def count(self) -> int:
        """Number of functions in the family (degree + 1)."""
        return self.degree + 1

    def label(self) -> str:
        if not self.params:
            return f"{self.family}:{self.degree}"
        inner = ",".join(f"{v:g}" for v in self.params.values())
        return f"{self.family}:{inner}"


def _finite(value: float, name: str) -> float:
    value = float(value)
    if not np.isfinite(value):
        raise InvalidParameterError(f"{name} must be finite, got {value!r}", field=name)
    return value


def bernstein(n: int) -> BlendingSystem:
    """Degree-n Bernstein system.  Requires n >= 1."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidParameterError("degree must be an integer", field="degree")
    if n < 1:
        raise InvalidParameterError(f"degree must be >= 1, got {n}", field="degree")
    if n > 60:
        raise InvalidParameterError(f"degree {n} is beyond the supported range (<= 60)", field="degree")
    n = int(n)
    return BlendingSystem(
        family="bernstein",
        degree=n,
        params=MappingProxyType({}),
        symmetric=True,
        monotonicity_preserving=True,
        polynomial=True,
        tangency=(float(n), float(n)),
        curvature=(float(n * (n - 1)), float(n * (n - 1))),
    )


def p_bezier(gamma: float) -> BlendingSystem:
    """Radical cubic family with global shape parameter gamma in [0, 1]."""
    gamma = _finite(gamma, "gamma")
    if not 0.0 <= gamma <= 1.0:
        raise InvalidParameterError(f"gamma must lie in [0, 1], got {gamma}", field="gamma")
    return BlendingSystem(
        family="p_bezier",
        degree=3,
        params=MappingProxyType({"gamma": gamma}),
        symmetric=True,
        monotonicity_preserving=False,
        polynomial=False,
        tangency=(3.0, 3.0),
        curvature=(6.0 * gamma, 6.0 * gamma),
    )


def lambda_mu(lam: float, mu: float) -> BlendingSystem:
    """Cubic-exponential family; lam, mu >= 0 control endpoint tension independently."""
    lam = _finite(lam, "lambda")
    mu = _finite(mu, "mu")
    if lam < 0.0 or mu < 0.0:
        raise InvalidParameterError("lambda and mu must be >= 0", field="lambda" if lam < 0 else "mu")
    # endpoint second derivatives follow the (w, -2w, w) pattern only when the
    # corresponding tension vanishes
    return BlendingSystem(
        family="lambda_mu",
        degree=3,
        params=MappingProxyType({"lambda": lam, "mu": mu}),
        symmetric=(lam == mu),
        monotonicity_preserving=False,
        polynomial=False,
        tangency=(3.0 + lam, 3.0 + mu),
        curvature=(6.0 if lam == 0.0 else None, 6.0 if mu == 0.0 else None),
    )


def yan_cubic(lam: float) -> BlendingSystem:
    """Quintic-degree cubic-like family, lam in [-1, 1]; lam = 0 is cubic Bernstein."""
    lam = _finite(lam, "lambda")
    if not -1.0 <= lam <= 1.0:
        raise InvalidParameterError(f"lambda must lie in [-1, 1], got {lam}", field="lambda")
    return BlendingSystem(
        family="yan_cubic",
        degree=3,
        params=MappingProxyType({"lambda": lam}),
        symmetric=True,
        monotonicity_preserving=False,
        polynomial=True,
        tangency=(3.0 + 2.0 * lam, 3.0 + 2.0 * lam),
        curvature=(6.0 if lam == 0.0 else None, 6.0 if lam == 0.0 else None),
    )


# -- evaluation ---------------------------------------------------------------


def _as_grid(t) -> tuple[np.ndarray, bool]:
    arr = np.asarray(t, dtype=float)
    if arr.ndim > 1:
        raise DomainError("t must be a scalar or 1-D array", field="t")
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr)
    if flat.size:
        if not np.all(np.isfinite(flat)):
            raise DomainError("t must be finite", field="t")
        if flat.min() < 0.0 or flat.max() > 1.0:
            raise DomainError("t must lie in [0, 1]", field="t")
    return flat, scalar


def _bernstein_rows(n: int, t: np.ndarray) -> np.ndarray:
    # de Casteljau-style triangle: stable for all n, vectorized over t
    out = np.zeros((n + 1, t.size))
    out[0] = 1.0
    u = 1.0 - t
    for j in range(1, n + 1):
        for i in range(j, 0, -1):
            out[i] = t * out[i - 1] + u * out[i]
        out[0] = u * out[0]
    return out


def _bernstein_d1(n: int, t: np.ndarray) -> np.ndarray:
    low = _bernstein_rows(n - 1, t)
    z = np.zeros((1, t.size))
    p = np.vstack([z, low, z])  # p[i] == B_{n-1, i-1}
    return n * (p[: n + 1] - p[1 : n + 2])


def _bernstein_d2(n: int, t: np.ndarray) -> np.ndarray:
    if n < 2:
        return np.zeros((n + 1, t.size))
    low = _bernstein_rows(n - 2, t)
    z = np.zeros((2, t.size))
    p = np.vstack([z, low, z])  # p[i] == B_{n-2, i-2}
    return n * (n - 1) * (p[: n + 1] - 2 * p[1 : n + 2] + p[2 : n + 3])


def _pb_radical(t: np.ndarray, gamma: float):
    """Inner radical of the p-Bezier family and its first two derivatives."""
    u = 1.0 / 3.0 - t
    w = (1.0 - t) ** 2
    v = t - 1.0 / 3.0 + (2.0 / 3.0) * (1.0 - t) * w
    vp = 1.0 - 2.0 * w
    vpp = 4.0 * (1.0 - t)
    R = (1.0 - gamma) * u * u + gamma * v * v
    Rp = -2.0 * (1.0 - gamma) * u + 2.0 * gamma * v * vp
    Rpp = 2.0 * (1.0 - gamma) + 2.0 * gamma * (vp * vp + v * vpp)
    r = np.sqrt(np.maximum(R, 0.0))
    # gamma = 0 collapses the radical to |1/3 - t|; the crease point itself
    # gets derivative 0 (any value in the subgradient would do)
    safe = np.where(r > 0.0, r, 1.0)
    rp = np.where(r > 0.0, Rp / (2.0 * safe), 0.0)
    rpp = np.where(r > 0.0, (2.0 * R * Rpp - Rp * Rp) / (4.0 * safe**3), 0.0)
    return r, rp, rpp


def _pbezier_all(t: np.ndarray, gamma: float, order: int) -> np.ndarray:
    r1, r1p, r1pp = _pb_radical(t, gamma)
    m2, m2p, m2pp = _pb_radical(1.0 - t, gamma)
    r2 = m2
    r2p = -m2p  # r2(t) = r1(1 - t)
    r2pp = m2pp
    if order == 0:
        r0, r3 = t, 1.0 - t
        return np.stack(
            [
                0.5 + 1.5 * (r1 - r0),
                1.5 * (r2 - 2.0 * r1 + r0),
                1.5 * (r3 - 2.0 * r2 + r1),
                0.5 - 1.5 * (r3 - r2),
            ]
        )
    if order == 1:
        return np.stack(
            [
                1.5 * (r1p - 1.0),
                1.5 * (r2p - 2.0 * r1p + 1.0),
                1.5 * (-1.0 - 2.0 * r2p + r1p),
                1.5 * (1.0 + r2p),
            ]
        )
    return np.stack(
        [
            1.5 * r1pp,
            1.5 * (r2pp - 2.0 * r1pp),
            1.5 * (r1pp - 2.0 * r2pp),
            1.5 * r2pp,
        ]
    )


def _lambda_mu_all(t: np.ndarray, lam: float, mu: float, order: int) -> np.ndarray:
    s = 1.0 - t
    ea = np.exp(-lam * t)
    eb = np.exp(-mu * s)
    if order == 0:
        A0 = s**3 * ea
        A3 = t**3 * eb
        return np.stack([A0, 1.0 - 3.0 * t**2 + 2.0 * t**3 - A0, 3.0 * t**2 - 2.0 * t**3 - A3, A3])
    if order == 1:
        A0p = -ea * s * s * (3.0 + lam * s)
        A3p = eb * t * t * (3.0 + mu * t)
        core = 6.0 * t * s  # d/dt of 3t^2 - 2t^3
        return np.stack([A0p, -core - A0p, core - A3p, A3p])
    A0pp = ea * (6.0 * s + 6.0 * lam * s * s + lam * lam * s**3)
    A3pp = eb * (6.0 * t + 6.0 * mu * t * t + mu * mu * t**3)
    corep = 6.0 - 12.0 * t
    return np.stack([A0pp, -corep - A0pp, corep - A3pp, A3pp])


def _yan_coeffs(lam: float) -> np.ndarray:
    # monomial coefficients, ascending powers t^0..t^5
    return np.array(
        [
            [1.0, -3.0 - 2.0 * lam, 3.0 + 7.0 * lam, -1.0 - 9.0 * lam, 5.0 * lam, -lam],
            [0.0, 3.0 + 2.0 * lam, -6.0 - 8.0 * lam, 3.0 + 13.0 * lam, -10.0 * lam, 3.0 * lam],
            [0.0, 0.0, 3.0 + lam, -3.0 - 3.0 * lam, 5.0 * lam, -3.0 * lam],
            [0.0, 0.0, 0.0, 1.0 - lam, 0.0, lam],
        ]
    )


def _yan_all(t: np.ndarray, lam: float, order: int) -> np.ndarray:
    coeffs = _yan_coeffs(lam)
    for _ in range(order):
        coeffs = np.polynomial.polynomial.polyder(coeffs, axis=1)
    return np.polynomial.polynomial.polyval(t, coeffs.T, tensor=True)


def _rows(system: BlendingSystem, t: np.ndarray, order: int) -> np.ndarray:
    fam = system.family
    if fam == "bernstein":
        n = system.degree
        if order == 0:
            return _bernstein_rows(n, t)
        if order == 1:
            return _bernstein_d1(n, t)
        return _bernstein_d2(n, t)
    if fam == "p_bezier":
        return _pbezier_all(t, system.params["gamma"], order)
    if fam == "lambda_mu":
        return _lambda_mu_all(t, system.params["lambda"], system.params["mu"], order)
    if fam == "yan_cubic":
        return _yan_all(t, system.params["lambda"], order)
    raise InvalidParameterError(f"unknown blending family {fam!r}", field="family")


def evaluate_all(system: BlendingSystem, t) -> np.ndarray:
    """Values of all functions at ``t``: shape (count,) for scalar t, else (count, len(t))."""
    grid, scalar = _as_grid(t)
    rows = _rows(system, grid, 0)
    return rows[:, 0] if scalar else rows


def derivative_all(system: BlendingSystem, t, order: int = 1) -> np.ndarray:
    """Derivative rows of the given order (1 or 2), shaped like ``evaluate_all``."""
    if order not in (1, 2):
        raise InvalidParameterError(f"derivative order must be 1 or 2, got {order}", field="order")
    grid, scalar = _as_grid(t)
    rows = _rows(system, grid, order)
    return rows[:, 0] if scalar else rows


# -- property verification ----------------------------------------------------

UNITY_TOL_POLY = 1e-12
UNITY_TOL = 1e-10
NONNEG_TOL = 1e-12
ENDPOINT_TOL = 1e-12
TANGENCY_TOL = 1e-8


def verify_blending_properties(system: BlendingSystem, grid_size: int = 1001) -> PropertyReport:
    """Sweep a uniform grid and report worst-case residuals for the defining properties.

    The symmetry check is always measured; it is expected to fail (and is
    reported as failed) for asymmetric instances such as lambda_mu with
    lam != mu.
    """
    if grid_size < 3:
        raise InvalidParameterError("grid_size must be >= 3", field="grid_size")
    grid = np.linspace(0.0, 1.0, grid_size)
    F = evaluate_all(system, grid)

    checks = []

    neg = float(F.min())
    worst = grid[np.unravel_index(np.argmin(F), F.shape)[1]]
    checks.append(
        PropertyCheck("nonnegativity", neg >= -NONNEG_TOL, max(0.0, -neg), float(worst), NONNEG_TOL)
    )

    unity_tol = UNITY_TOL_POLY if system.polynomial else UNITY_TOL
    unity = np.abs(F.sum(axis=0) - 1.0)
    k = int(np.argmax(unity))
    checks.append(
        PropertyCheck("partition_of_unity", unity[k] <= unity_tol, float(unity[k]), float(grid[k]), unity_tol)
    )

    # uniform grids are mirror-closed, so F_i(1-t) is just a column flip
    sym = np.abs(F - F[::-1, ::-1])
    k = int(np.argmax(sym.max(axis=0)))
    checks.append(
        PropertyCheck("symmetry", float(sym.max()) <= UNITY_TOL, float(sym.max()), float(grid[k]), UNITY_TOL)
    )

    n = system.degree
    ends = evaluate_all(system, np.array([0.0, 1.0]))
    want0 = np.zeros(n + 1)
    want0[0] = 1.0
    want1 = np.zeros(n + 1)
    want1[n] = 1.0
    resid = max(np.abs(ends[:, 0] - want0).max(), np.abs(ends[:, 1] - want1).max())
    checks.append(
        PropertyCheck("endpoint_interpolation", resid <= ENDPOINT_TOL, float(resid), 0.0, ENDPOINT_TOL)
    )

    m0, m1 = system.tangency
    d = derivative_all(system, np.array([0.0, 1.0]), order=1)
    want_d0 = np.zeros(n + 1)
    want_d0[0] = -m0
    want_d0[1] = m0
    want_d1 = np.zeros(n + 1)
    want_d1[n - 1] = -m1
    want_d1[n] = m1
    resid = max(np.abs(d[:, 0] - want_d0).max(), np.abs(d[:, 1] - want_d1).max())
    checks.append(
        PropertyCheck("endpoint_tangency", resid <= TANGENCY_TOL, float(resid), 0.0, TANGENCY_TOL)
    )

    return PropertyReport(tuple(checks))
