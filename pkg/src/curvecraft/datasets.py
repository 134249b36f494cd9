"""Bundled demo data for figures, tests, and UI presets."""

from __future__ import annotations

import numpy as np

from .interpolation import MonotoneDataset

__all__ = ["DEMO_X", "DEMO_F", "demo_dataset", "demo_reference"]

# 8-point monotone sampling of the standard logistic sigmoid on [0, 2],
# ordinates rounded to three decimals
DEMO_X = (0.0, 0.292, 0.461, 0.799, 1.172, 1.409, 1.798, 2.0)
DEMO_F = (0.5, 0.572, 0.613, 0.69, 0.763, 0.804, 0.858, 0.881)


def demo_dataset() -> MonotoneDataset:
    return MonotoneDataset(np.array(DEMO_X), np.array(DEMO_F))


def demo_reference(x) -> np.ndarray:
    """The logistic sigmoid the demo data was sampled from."""
    return 1.0 / (1.0 + np.exp(-np.asarray(x, dtype=float)))
