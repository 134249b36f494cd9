"""Structured pass/fail reporting for numerical property sweeps."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PropertyCheck:
    """One verified property: worst residual over the sweep and where it occurred."""

    name: str
    passed: bool
    residual: float
    witness: float  # grid location of the worst residual
    tolerance: float

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "residual": float(self.residual),
            "witness": float(self.witness),
            "tolerance": float(self.tolerance),
        }


@dataclass(frozen=True)
class PropertyReport:
    checks: tuple[PropertyCheck, ...]

    def __getitem__(self, name: str) -> PropertyCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> tuple[PropertyCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def as_dict(self) -> dict:
        return {"all_passed": self.all_passed, "checks": [c.as_dict() for c in self.checks]}
