"""Evaluate margin weighting functions on (y, z) grids and emit CSV.

A margin weighting function is an association measure restricted to a
plane of constant odds-ratio, viewed as a function of the margin
coordinates (y, z).  The emitted CSV (header ``y,z,value``) is the raw
data behind contour/heatmap plots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .measures import MeasureKind, eval_in_coords, evaluate
from .tables import MarginCoords, psi

__all__ = ["GridSpec", "grid_axis", "emit_grid"]

_COORD_FORMS = frozenset(
    {"yule_y", "corr_r", "d_prime", "entropy", "entropy_diag", "hs"}
)


@dataclass(frozen=True)
class GridSpec:
    """Rectangular symmetric (y, z) grid for one measure at one odds-ratio."""

    measure: MeasureKind
    odds_ratio: float
    half_width: float
    step: float

    def __post_init__(self):
        if not (math.isfinite(self.odds_ratio) and self.odds_ratio > 0.0):
            raise ValueError(f"odds_ratio must be > 0, got {self.odds_ratio!r}")
        if not (math.isfinite(self.half_width) and self.half_width > 0.0):
            raise ValueError(f"half_width must be > 0, got {self.half_width!r}")
        if not (math.isfinite(self.step) and 0.0 < self.step <= 2.0 * self.half_width):
            raise ValueError(
                f"step must be in (0, 2*half_width], got {self.step!r}"
            )


def grid_axis(spec):
    """Grid coordinates from -half_width to +half_width, both ends included."""
    count = int(round(2.0 * spec.half_width / spec.step)) + 1
    return [-spec.half_width + i * spec.step for i in range(count)]


def emit_grid(spec, sink):
    """Write the grid as CSV bytes (y-major) to a binary sink; return row count.

    Values use shortest round-trip decimal formatting, so output is
    byte-for-byte reproducible for a given spec.
    """
    x = 0.5 * math.log(spec.odds_ratio)
    axis = grid_axis(spec)
    kind = spec.measure
    use_coords = kind.tag in _COORD_FORMS

    sink.write(b"y,z,value\n")
    rows = 0
    for y in axis:
        lines = []
        for z in axis:
            if use_coords:
                value = eval_in_coords(kind, MarginCoords(x, y, z))
            else:
                value = evaluate(kind, psi(MarginCoords(x, y, z)))
            lines.append(f"{y!r},{z!r},{value!r}\n")
        sink.write("".join(lines).encode("ascii"))
        rows += len(lines)
    return rows
