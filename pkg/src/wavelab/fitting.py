"""Power-law fitting for decay-rate and scaling studies."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["PowerLawFit", "fit_power_law"]


@dataclass(frozen=True)
class PowerLawFit:
    slope: float
    intercept: float
    r_squared: float


def fit_power_law(xs, ys) -> PowerLawFit:
    """Least squares of log y against log x.

    Requires at least three strictly positive points.  The intercept is the
    fitted log-amplitude, r_squared the coefficient of determination in log
    space.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("xs and ys must be 1D arrays of equal length")
    if len(xs) < 3:
        raise ValueError(f"power-law fit needs at least 3 points, got {len(xs)}")
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("power-law fit needs strictly positive inputs")
    lx, ly = np.log(xs), np.log(ys)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - float(np.sum(resid**2)) / ss_tot
    return PowerLawFit(slope=float(slope), intercept=float(intercept), r_squared=r2)
