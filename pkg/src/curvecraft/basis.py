"""Enhanced blending bases: a blending system warped toward an auxiliary transition.

Given a blending system F_0..F_n, an auxiliary function phi, and a mixing
weight sigma in [0, 1], the enhanced family is

    T_0 = (1 - sigma)(1 - phi) + sigma F_0
    T_i =                        sigma F_i        (0 < i < n)
    T_n = (1 - sigma) phi      + sigma F_n

At sigma = 1 the family is the original system; at sigma = 0 it degenerates to
the two-function pair (1 - phi, phi) and every curve built on it collapses to
the chord between the first and last control points.  Non-negativity,
partition of unity, endpoint interpolation, and the endpoint tangency pattern
(with magnitudes scaled by sigma) are inherited for every sigma; linear
independence holds iff sigma != 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .auxiliary import AuxiliaryFunction, validate_auxiliary
from .blending import BlendingSystem
from .blending import derivative_all as system_derivative_all
from .blending import evaluate_all as system_evaluate_all
from .errors import DomainError, InvalidParameterError
from .report import PropertyCheck, PropertyReport

__all__ = [
    "EnhancedBasis",
    "build",
    "evaluate_all",
    "derivative_all",
    "collocation_matrix",
    "collocation_rank",
    "verify_theorem1",
]

_BUILD_GRID = 257


@dataclass(frozen=True)
class EnhancedBasis:
    system: BlendingSystem
    aux: AuxiliaryFunction
    sigma: float
    degenerate: bool  # sigma == 0: curves collapse to the chord
    # False when built on a non-strict auxiliary: the basis still sums to one
    # exactly (the phi terms cancel), but mirror symmetry drifts by
    # (1 - sigma) times the auxiliary's partition deficit
    aux_partition_exact: bool

    @property
    def count(self) -> int:
        return self.system.count

    def label(self) -> str:
        return f"{self.system.label()}+{self.aux.label()}@sigma={self.sigma:g}"


def build(system: BlendingSystem, aux: AuxiliaryFunction, sigma: float) -> EnhancedBasis:
    """Validate the ingredients and assemble an enhanced basis.

    The auxiliary is re-validated on a small grid: endpoint values/derivatives
    and codomain must hold for any aux; exact partition is additionally
    required unless the aux is flagged non-strict (then the basis only loses
    its own exact partition, recorded in ``partition_exact``).
    """
    sigma = float(sigma)
    if not np.isfinite(sigma) or not 0.0 <= sigma <= 1.0:
        raise DomainError(f"sigma must lie in [0, 1], got {sigma}", field="sigma")
    report = validate_auxiliary(aux, grid_size=_BUILD_GRID)
    required = ["endpoint_values", "endpoint_derivatives", "codomain"]
    if aux.strict_partition:
        required.append("partition")
    for name in required:
        check = report[name]
        if not check.passed:
            raise InvalidParameterError(
                f"auxiliary {aux.label()!r} fails its {name} condition "
                f"(residual {check.residual:.3e} at t = {check.witness:g})",
                field="aux",
            )
    return EnhancedBasis(
        system=system,
        aux=aux,
        sigma=sigma,
        degenerate=(sigma == 0.0),
        aux_partition_exact=aux.strict_partition,
    )


def evaluate_all(basis: EnhancedBasis, t) -> np.ndarray:
    """Rows T_0..T_n at ``t``; shape (count,) for scalar t, else (count, len(t))."""
    rows = basis.sigma * system_evaluate_all(basis.system, t)
    w = 1.0 - basis.sigma
    if w != 0.0:
        phi = basis.aux.value(np.asarray(t, dtype=float))
        rows[0] += w * (1.0 - phi)
        rows[-1] += w * phi
    return rows


def derivative_all(basis: EnhancedBasis, t, order: int = 1) -> np.ndarray:
    rows = basis.sigma * system_derivative_all(basis.system, t, order)
    w = 1.0 - basis.sigma
    if w != 0.0:
        dphi = (basis.aux.deriv1 if order == 1 else basis.aux.deriv2)(np.asarray(t, dtype=float))
        rows[0] -= w * dphi
        rows[-1] += w * dphi
    return rows


def collocation_matrix(basis: EnhancedBasis, nodes=None) -> np.ndarray:
    """Matrix M[i, j] = T_i(nodes[j]); defaults to count uniform nodes."""
    if nodes is None:
        nodes = np.linspace(0.0, 1.0, basis.count)
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim != 1 or nodes.size != basis.count:
        raise InvalidParameterError(
            f"need exactly {basis.count} collocation nodes, got shape {nodes.shape}", field="nodes"
        )
    return evaluate_all(basis, nodes)


def collocation_rank(basis: EnhancedBasis, nodes=None, cutoff: float = 1e-10) -> tuple[int, float]:
    """(numerical rank, condition estimate) of the collocation matrix by SVD."""
    M = collocation_matrix(basis, nodes)
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0, float("inf")
    rank = int(np.count_nonzero(s >= cutoff * s[0]))
    cond = float("inf") if s[-1] == 0.0 else float(s[0] / s[-1])
    return rank, cond


NONNEG_TOL = 1e-12
PARTITION_TOL = 1e-9
ENDPOINT_TOL = 1e-12
TANGENCY_TOL = 1e-6
SYMMETRY_TOL = 1e-10


def verify_theorem1(basis: EnhancedBasis, grid_size: int = 1001) -> PropertyReport:
    """Grid-verify the inherited properties of an enhanced basis.

    Symmetry is only meaningful (and only reported) when both the underlying
    system is symmetric and the auxiliary has an exact partition; linear
    independence is reported as a rank check: full rank for sigma != 0, rank 2
    in the degenerate sigma = 0 case.
    """
    if grid_size < 3:
        raise InvalidParameterError("grid_size must be >= 3", field="grid_size")
    grid = np.linspace(0.0, 1.0, grid_size)
    T = evaluate_all(basis, grid)
    n = basis.system.degree
    checks = []

    neg = float(T.min())
    worst = grid[np.unravel_index(np.argmin(T), T.shape)[1]]
    checks.append(PropertyCheck("nonnegativity", neg >= -NONNEG_TOL, max(0.0, -neg), float(worst), NONNEG_TOL))

    unity = np.abs(T.sum(axis=0) - 1.0)
    k = int(np.argmax(unity))
    checks.append(
        PropertyCheck("partition_of_unity", unity[k] <= PARTITION_TOL, float(unity[k]), float(grid[k]), PARTITION_TOL)
    )

    ends = evaluate_all(basis, np.array([0.0, 1.0]))
    want0 = np.zeros(n + 1)
    want0[0] = 1.0
    want1 = np.zeros(n + 1)
    want1[n] = 1.0
    resid = max(np.abs(ends[:, 0] - want0).max(), np.abs(ends[:, 1] - want1).max())
    checks.append(PropertyCheck("endpoint_interpolation", resid <= ENDPOINT_TOL, float(resid), 0.0, ENDPOINT_TOL))

    m0, m1 = basis.system.tangency
    d = derivative_all(basis, np.array([0.0, 1.0]), order=1)
    want_d0 = np.zeros(n + 1)
    want_d0[0] = -basis.sigma * m0
    want_d0[1] = basis.sigma * m0
    want_d1 = np.zeros(n + 1)
    want_d1[n - 1] = -basis.sigma * m1
    want_d1[n] = basis.sigma * m1
    resid = max(np.abs(d[:, 0] - want_d0).max(), np.abs(d[:, 1] - want_d1).max())
    checks.append(PropertyCheck("endpoint_tangency", resid <= TANGENCY_TOL, float(resid), 0.0, TANGENCY_TOL))

    if basis.system.symmetric and basis.aux_partition_exact:
        sym = np.abs(T - T[::-1, ::-1])
        k = int(np.argmax(sym.max(axis=0)))
        checks.append(PropertyCheck("symmetry", float(sym.max()) <= SYMMETRY_TOL, float(sym.max()), float(grid[k]), SYMMETRY_TOL))

    rank, _ = collocation_rank(basis)
    expected = basis.count if basis.sigma != 0.0 else min(2, basis.count)
    checks.append(PropertyCheck("linear_independence", rank == expected, float(abs(rank - expected)), 0.0, 0.0))

    return PropertyReport(tuple(checks))
