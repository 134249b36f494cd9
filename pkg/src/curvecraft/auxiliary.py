"""Auxiliary transition functions phi: [0, 1] -> [0, 1].

These supply the sigma-degenerate part of the enhanced basis.  A *strict*
auxiliary satisfies

  (i)   phi(0) = 0,  phi(1) = 1,
  (ii)  phi(t) + phi(1 - t) = 1,
  (iii) phi'(0) = phi'(1) = 0,

with values inside [0, 1].  ``pseudo_psi`` deliberately relaxes (ii): its
partition sum stays within about 5e-3 of 1 but is not exact, and it is flagged
``strict_partition=False`` so downstream code can warn.

``c2_compatible`` marks functions whose second derivative also vanishes at both
endpoints; only those preserve the endpoint curvature pattern of a degree-5
enhanced basis, which the C2 interpolation scheme relies on.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np

from .blending import _bernstein_rows
from .errors import DomainError, InvalidParameterError
from .report import PropertyCheck, PropertyReport

__all__ = [
    "AuxiliaryFunction",
    "cubic",
    "quintic",
    "bernstein_tail",
    "trig",
    "expo_rational",
    "pseudo_psi",
    "validate_auxiliary",
]


@dataclass(frozen=True)
class AuxiliaryFunction:
    name: str
    value: Callable[[np.ndarray], np.ndarray] = field(compare=False, repr=False)
    deriv1: Callable[[np.ndarray], np.ndarray] = field(compare=False, repr=False)
    deriv2: Callable[[np.ndarray], np.ndarray] = field(compare=False, repr=False)
    increasing: bool = True
    c2_compatible: bool = False
    strict_partition: bool = True
    params: Mapping[str, float] = field(default_factory=lambda: MappingProxyType({}))

    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{v:g}" for v in self.params.values())
        return f"{self.name}:{inner}"


def _grid(t) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if arr.size and (not np.all(np.isfinite(arr)) or arr.min() < 0.0 or arr.max() > 1.0):
        raise DomainError("t must lie in [0, 1]", field="t")
    return arr


@functools.lru_cache(maxsize=None)
def cubic() -> AuxiliaryFunction:
    """Smoothstep 3t^2 - 2t^3.  phi''(0) = 6, so not C2-compatible."""
    return AuxiliaryFunction(
        name="cubic",
        value=lambda t: (g := _grid(t)) * g * (3.0 - 2.0 * g),
        deriv1=lambda t: 6.0 * (g := _grid(t)) * (1.0 - g),
        deriv2=lambda t: 6.0 - 12.0 * _grid(t),
        increasing=True,
        c2_compatible=False,
        strict_partition=True,
    )


@functools.lru_cache(maxsize=None)
def quintic() -> AuxiliaryFunction:
    """Smootherstep 6t^5 - 15t^4 + 10t^3; second derivative vanishes at both ends."""

    def val(t):
        g = _grid(t)
        return g**3 * (10.0 + g * (-15.0 + 6.0 * g))

    def d1(t):
        g = _grid(t)
        return 30.0 * g * g * (1.0 - g) ** 2

    def d2(t):
        g = _grid(t)
        return 60.0 * g * (1.0 - g) * (1.0 - 2.0 * g)

    return AuxiliaryFunction(
        name="quintic", value=val, deriv1=d1, deriv2=d2,
        increasing=True, c2_compatible=True, strict_partition=True,
    )


@functools.lru_cache(maxsize=None)
def bernstein_tail(n: int) -> AuxiliaryFunction:
    """Upper-tail Bernstein sum phi = sum_{j>k} B_{n,j} for odd n, k = n // 2.

    The telescoped derivative is n * B_{n-1,k}, so the function is exactly
    increasing.  n = 3 coincides with ``cubic``; n >= 5 is C2-compatible.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidParameterError("n must be an integer", field="n")
    n = int(n)
    if n < 3 or n % 2 == 0:
        raise InvalidParameterError(f"n must be odd and >= 3, got {n}", field="n")
    if n > 25:
        raise InvalidParameterError(f"n = {n} is beyond the supported range (<= 25)", field="n")
    k = n // 2

    def val(t):
        g = np.atleast_1d(_grid(t))
        out = _bernstein_rows(n, g)[k + 1 :].sum(axis=0)
        return out.reshape(np.shape(t))

    def d1(t):
        g = np.atleast_1d(_grid(t))
        out = n * _bernstein_rows(n - 1, g)[k]
        return out.reshape(np.shape(t))

    def d2(t):
        g = np.atleast_1d(_grid(t))
        rows = _bernstein_rows(n - 2, g)
        out = n * (n - 1) * (rows[k - 1] - rows[k])
        return out.reshape(np.shape(t))

    return AuxiliaryFunction(
        name="bernstein_tail", value=val, deriv1=d1, deriv2=d2,
        increasing=True, c2_compatible=(n >= 5), strict_partition=True,
        params=MappingProxyType({"n": n}),
    )


@functools.lru_cache(maxsize=None)
def trig(k: int) -> AuxiliaryFunction:
    """phi_k = sin^2(k pi t / 2) for odd k; increasing only for k = 1."""
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise InvalidParameterError("k must be an integer", field="k")
    k = int(k)
    if k < 1 or k % 2 == 0:
        raise InvalidParameterError(f"k must be odd and >= 1, got {k}", field="k")
    if k > 99:
        raise InvalidParameterError(f"k = {k} is beyond the supported range (<= 99)", field="k")
    w = k * math.pi

    def val(t):
        return np.sin(0.5 * w * _grid(t)) ** 2

    def d1(t):
        return 0.5 * w * np.sin(w * _grid(t))

    def d2(t):
        return 0.5 * w * w * np.cos(w * _grid(t))

    return AuxiliaryFunction(
        name="trig", value=val, deriv1=d1, deriv2=d2,
        increasing=(k == 1), c2_compatible=False, strict_partition=True,
        params=MappingProxyType({"k": k}),
    )


def _expo_parts(t: np.ndarray):
    # phi = N / D with N = t^2, D = t^2 + (1-t)^2 e^{1-2t}
    s = 1.0 - t
    E = s * s * np.exp(1.0 - 2.0 * t)
    Ep = -2.0 * np.exp(1.0 - 2.0 * t) * s * (2.0 - t)
    Epp = np.exp(1.0 - 2.0 * t) * (4.0 * s * (2.0 - t) + 2.0 * (3.0 - 2.0 * t))
    return E, Ep, Epp


@functools.lru_cache(maxsize=None)
def expo_rational() -> AuxiliaryFunction:
    """phi = t^2 / (t^2 + (1-t)^2 e^{1-2t}); exact partition, phi''(0) = 2/e != 0."""

    def val(t):
        g = _grid(t)
        E, _, _ = _expo_parts(g)
        return g * g / (g * g + E)

    def d1(t):
        g = _grid(t)
        E, Ep, _ = _expo_parts(g)
        D = g * g + E
        return (2.0 * g * E - g * g * Ep) / (D * D)

    def d2(t):
        g = _grid(t)
        E, Ep, Epp = _expo_parts(g)
        D = g * g + E
        Dp = 2.0 * g + Ep
        Dpp = 2.0 + Epp
        phi = g * g / D
        phip = (2.0 * g * E - g * g * Ep) / (D * D)
        return (2.0 - 2.0 * phip * Dp - phi * Dpp) / D

    fn = AuxiliaryFunction(
        name="expo_rational", value=val, deriv1=d1, deriv2=d2,
        increasing=True, c2_compatible=False, strict_partition=True,
    )
    # the increasing flag is certified numerically once per process: the
    # closed-form derivative has no simple sign proof
    sweep = fn.deriv1(np.linspace(0.0, 1.0, 10_001))
    if sweep.min() < -1e-10:
        raise InvalidParameterError("expo_rational derivative sweep found a negative slope")
    return fn


@functools.lru_cache(maxsize=None)
def pseudo_psi() -> AuxiliaryFunction:
    """Near-partition transition psi = t^2 b(t)^{2(1-t)}, b(t) = 2(e-2)t + 4 - e.

    b is the line through b(1/2) = 2 and b(1) = e, which makes psi(1/2) = 1/2
    and psi'(1) = 0 exact.  The partition sum psi(t) + psi(1-t) ranges over
    [0.99520086, 1], so the function is flagged non-strict.
    """
    a = 2.0 * (math.e - 2.0)
    c = 4.0 - math.e

    def parts(g):
        b = a * g + c
        L = np.log(b)
        gp = -2.0 * L + 2.0 * (1.0 - g) * a / b  # d/dt of the exponent 2(1-t) ln b
        gpp = -4.0 * a / b - 2.0 * (1.0 - g) * (a / b) ** 2
        E = np.exp(2.0 * (1.0 - g) * L)
        return E, gp, gpp

    def val(t):
        g = _grid(t)
        E, _, _ = parts(g)
        return g * g * E

    def d1(t):
        g = _grid(t)
        E, gp, _ = parts(g)
        return E * (2.0 * g + g * g * gp)

    def d2(t):
        g = _grid(t)
        E, gp, gpp = parts(g)
        return E * (2.0 + 4.0 * g * gp + g * g * (gp * gp + gpp))

    return AuxiliaryFunction(
        name="pseudo_psi", value=val, deriv1=d1, deriv2=d2,
        increasing=True, c2_compatible=False, strict_partition=False,
    )


# -- validation ---------------------------------------------------------------

ENDPOINT_VALUE_TOL = 1e-12
PARTITION_TOL = 1e-10
ENDPOINT_DERIV_TOL = 1e-8
CODOMAIN_TOL = 1e-12
MONOTONE_TOL = 1e-10
C2_ENDPOINT_TOL = 1e-8


def validate_auxiliary(
    fn: AuxiliaryFunction,
    grid_size: int = 1001,
    partition_tol: float = PARTITION_TOL,
) -> PropertyReport:
    """Grid-sweep the defining conditions and report worst residuals.

    Checks are reported for every function regardless of its flags, so a
    non-strict or non-increasing function shows honest failures here; callers
    decide which checks are binding via the flags on the function itself.
    """
    if grid_size < 3:
        raise InvalidParameterError("grid_size must be >= 3", field="grid_size")
    grid = np.linspace(0.0, 1.0, grid_size)
    v = fn.value(grid)
    d = fn.deriv1(grid)

    checks = []

    resid = max(abs(float(fn.value(0.0))), abs(float(fn.value(1.0)) - 1.0))
    checks.append(PropertyCheck("endpoint_values", resid <= ENDPOINT_VALUE_TOL, resid, 0.0, ENDPOINT_VALUE_TOL))

    part = np.abs(v + v[::-1] - 1.0)
    k = int(np.argmax(part))
    checks.append(PropertyCheck("partition", part[k] <= partition_tol, float(part[k]), float(grid[k]), partition_tol))

    resid = max(abs(float(fn.deriv1(0.0))), abs(float(fn.deriv1(1.0))))
    checks.append(PropertyCheck("endpoint_derivatives", resid <= ENDPOINT_DERIV_TOL, resid, 0.0, ENDPOINT_DERIV_TOL))

    lo, hi = float(v.min()), float(v.max())
    resid = max(0.0, -lo, hi - 1.0)
    k = int(np.argmin(v) if -lo >= hi - 1.0 else np.argmax(v))
    checks.append(PropertyCheck("codomain", resid <= CODOMAIN_TOL, resid, float(grid[k]), CODOMAIN_TOL))

    k = int(np.argmin(d))
    checks.append(
        PropertyCheck("increasing", float(d[k]) >= -MONOTONE_TOL, max(0.0, -float(d[k])), float(grid[k]), MONOTONE_TOL)
    )

    resid = max(abs(float(fn.deriv2(0.0))), abs(float(fn.deriv2(1.0))))
    checks.append(PropertyCheck("c2_endpoints", resid <= C2_ENDPOINT_TOL, resid, 0.0, C2_ENDPOINT_TOL))

    return PropertyReport(tuple(checks))
