"""Shared vocabulary: geometry markers, smooth profiles, sampled fields.

The verification layers upstream (quantum corrections, wave-equation
residuals) all consume one of three things: a closed form with analytic
derivatives, a bare callable to be differenced, or values sampled on a
grid.  This module provides those containers plus the finite-difference
machinery -- Richardson-extrapolated central differences for callables and
fourth-order stencils for uniform grids -- so every consumer differentiates
the same way.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

__all__ = [
    "Geometry",
    "SmoothFunction",
    "ScalarField1D",
    "RadialField",
    "DEFAULT_FD_STEP",
    "richardson_d1",
    "richardson_d2",
    "uniform_spacing",
    "grid_derivatives",
    "InsufficientGridError",
]

DEFAULT_FD_STEP = 1e-3


class Geometry(Enum):
    """Which of the two compensating geometries an operation refers to."""

    ONE_D = "1d"
    THREE_D = "3d"


class InsufficientGridError(ValueError):
    """Grid too short or too coarse for the requested stencil."""


def richardson_d1(f: Callable, x, h: float = DEFAULT_FD_STEP):
    """First derivative by Richardson-extrapolated central differences.

    Two central differences at steps h and 2h combined as (4 D(h) - D(2h))/3
    cancel the O(h^2) error, leaving O(h^4).
    """
    d_h = (f(x + h) - f(x - h)) / (2.0 * h)
    d_2h = (f(x + 2.0 * h) - f(x - 2.0 * h)) / (4.0 * h)
    return (4.0 * d_h - d_2h) / 3.0


def richardson_d2(f: Callable, x, h: float = DEFAULT_FD_STEP):
    """Second derivative, same extrapolation as :func:`richardson_d1`."""
    d_h = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    d_2h = (f(x + 2.0 * h) - 2.0 * f(x) + f(x - 2.0 * h)) / (4.0 * h * h)
    return (4.0 * d_h - d_2h) / 3.0


@dataclass(frozen=True)
class SmoothFunction:
    """A function bundled with its first two derivatives.

    Closed forms carry analytic derivatives; :meth:`from_callable` wraps a
    bare callable with finite-difference derivatives instead, so the two
    routes share one interface and can be cross-checked against each other.
    """

    value: Callable
    d1: Callable
    d2: Callable

    def __call__(self, x):
        return self.value(x)

    @classmethod
    def from_callable(cls, f: Callable, h: float = DEFAULT_FD_STEP) -> "SmoothFunction":
        return cls(
            value=f,
            d1=lambda x: richardson_d1(f, x, h),
            d2=lambda x: richardson_d2(f, x, h),
        )

    @classmethod
    def constant(cls, c: float) -> "SmoothFunction":
        return cls(
            value=lambda x: c + 0.0 * np.asarray(x, dtype=float),
            d1=lambda x: 0.0 * np.asarray(x, dtype=float),
            d2=lambda x: 0.0 * np.asarray(x, dtype=float),
        )


@dataclass(frozen=True, eq=False)
class ScalarField1D:
    """Real values sampled on a strictly increasing 1D grid."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or values.ndim != 1:
            raise ValueError("grid and values must be one-dimensional")
        if grid.shape != values.shape:
            raise ValueError(
                f"grid and values length mismatch: {grid.shape} vs {values.shape}"
            )
        if grid.size < 2:
            raise ValueError("need at least two grid points")
        if not np.all(np.diff(grid) > 0.0):
            raise ValueError("grid must be strictly increasing")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.grid.size

    def node_index(self, x: float) -> int:
        """Index of the grid node matching x (to within a grid-scale tol)."""
        i = int(np.argmin(np.abs(self.grid - x)))
        span = self.grid[-1] - self.grid[0]
        if abs(self.grid[i] - x) > 1e-9 * span:
            raise InsufficientGridError(
                f"coordinate {x} is not a node of this grid"
            )
        return i


class RadialField(ScalarField1D):
    """A :class:`ScalarField1D` whose grid lives on the half-line r >= 0."""

    def __post_init__(self):
        super().__post_init__()
        if self.grid[0] < 0.0:
            raise ValueError("radial grid must satisfy r >= 0")


def uniform_spacing(grid: np.ndarray, rtol: float = 1e-8) -> float:
    """Spacing of a uniform grid; raises if the grid is not uniform."""
    steps = np.diff(grid)
    h = float(steps[0])
    if not np.allclose(steps, h, rtol=rtol, atol=0.0):
        raise InsufficientGridError("stencil derivatives need a uniform grid")
    return h


def grid_derivatives(values: np.ndarray, h: float):
    """Fourth-order first and second derivatives on a uniform grid.

    Returns (d1, d2, interior) where the arrays cover the interior slice
    ``interior = slice(2, n - 2)``; the two-point margins have no centered
    fourth-order stencil and are simply not reported.
    """
    v = np.asarray(values, dtype=float)
    n = v.size
    if n < 5:
        raise InsufficientGridError(
            f"fourth-order stencils need at least 5 nodes, got {n}"
        )
    d1 = (-v[4:] + 8.0 * v[3:-1] - 8.0 * v[1:-3] + v[:-4]) / (12.0 * h)
    d2 = (-v[4:] + 16.0 * v[3:-1] - 30.0 * v[2:-2] + 16.0 * v[1:-3] - v[:-4]) / (
        12.0 * h * h
    )
    return d1, d2, slice(2, n - 2)
