"""Independent integration of the two compensating wave equations.

The closed forms elsewhere in the package claim to solve

    1D:        psi'' + psi / x**4 = 0
    3D radial: psi'' + (2/r) psi' + r**4 psi = 0

and this module is the half of the bargain that does not trust them: it
integrates those equations numerically from initial data, evaluates
pointwise residuals of candidate solutions (analytically where derivatives
are available, by fourth-order finite differences otherwise), and locates
nodes.  Nothing here imports the closed forms, so agreement between the two
routes is evidence rather than tautology.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Union

import numpy as np
from scipy.integrate import OdeSolution, RK45
from scipy.optimize import bisect

from .fields import (
    ScalarField1D,
    SmoothFunction,
    grid_derivatives,
    uniform_spacing,
)

__all__ = [
    "WaveEquation",
    "IvpProblem",
    "WaveSolution",
    "ResidualReport",
    "ToleranceError",
    "StepUnderflowError",
    "UnderResolvedGridError",
    "SERIES_STEP_RADIUS",
    "integrate",
    "residual",
    "node_locations",
]


class WaveEquation(Enum):
    """Which compensating wave equation an operation refers to."""

    WAVE_1D = "1d"
    WAVE_3D = "3d"


class ToleranceError(ValueError):
    """Requested integrator tolerances outside the supported window."""


class StepUnderflowError(RuntimeError):
    """Adaptive stepping collapsed (tiny steps or step budget exhausted).

    Expected behaviour when a 1D span pushes toward x = 0, where the local
    wavelength 2 pi x**2 shrinks faster than any fixed budget can follow.
    """


class UnderResolvedGridError(ValueError):
    """Sampled data too coarse for a trustworthy finite-difference residual."""


# Radius at which integration of the regular 3D solution steps off the
# origin using the ascending series of the ODE itself.
SERIES_STEP_RADIUS = 1e-2

# psi(r) = psi0 * sum b_n r**n with b_{n+6} = -b_n / ((n+6)(n+7)); at the
# step-off radius three terms are already below double rounding.
_REGULAR_SERIES = ((0, 1.0), (6, -1.0 / 42.0), (12, 1.0 / 6552.0))


def _regular_series(r: float) -> tuple[float, float]:
    """Value and slope of the regular solution near r = 0, scaled to psi0=1."""
    v = sum(b * r ** n for n, b in _REGULAR_SERIES)
    d = sum(b * n * r ** (n - 1) for n, b in _REGULAR_SERIES if n > 0)
    return v, d


def _rhs(kind: WaveEquation) -> Callable:
    if kind is WaveEquation.WAVE_1D:
        def f(t, y):
            t4 = t * t * t * t
            return np.array([y[1], -y[0] / t4])
    else:
        def f(t, y):
            t4 = t * t * t * t
            return np.array([y[1], -2.0 * y[1] / t - t4 * y[0]])
    return f


@dataclass(frozen=True)
class IvpProblem:
    """Initial data for one directed integration of a wave equation."""

    kind: WaveEquation
    start: float
    end: float
    psi0: float
    dpsi0: float

    def __post_init__(self):
        if not (np.isfinite(self.start) and np.isfinite(self.end)):
            raise ValueError("span endpoints must be finite")
        if self.start == self.end:
            raise ValueError("zero-length span")
        if not (np.isfinite(self.psi0) and np.isfinite(self.dpsi0)):
            raise ValueError("initial data must be finite")
        if self.kind is WaveEquation.WAVE_1D:
            if self.start == 0.0 or self.end == 0.0 or self.start * self.end < 0.0:
                raise ValueError(
                    "1D integration must stay on one side of the singular point 0"
                )
        else:
            if self.start < 0.0 or self.end < 0.0:
                raise ValueError("radial integration needs r >= 0")
            if self.end < self.start:
                raise ValueError("radial integration runs outward (end > start)")
            if self.start == 0.0 and self.dpsi0 != 0.0:
                raise ValueError(
                    "the regular solution has zero slope at the origin"
                )


@dataclass(frozen=True, eq=False)
class WaveSolution:
    """Numerical solution with dense output over its integration window.

    ``grid`` holds the accepted step endpoints (plus the origin node for a
    3D run started at r = 0); ``values``/``slopes`` the state there.  The
    instance is callable for psi at arbitrary points of the window, and
    :meth:`slope` gives psi'.
    """

    problem: IvpProblem
    grid: np.ndarray
    values: np.ndarray
    slopes: np.ndarray
    n_steps: int
    n_rhs: int
    _dense: OdeSolution = field(repr=False)
    _series_psi0: Optional[float] = field(default=None, repr=False)

    @property
    def window(self) -> tuple[float, float]:
        lo = min(self.problem.start, self.problem.end)
        hi = max(self.problem.start, self.problem.end)
        return lo, hi

    def _eval(self, x):
        xarr = np.atleast_1d(np.asarray(x, dtype=float))
        lo, hi = self.window
        if np.any(xarr < lo - 1e-12) or np.any(xarr > hi + 1e-12):
            raise ValueError(f"evaluation outside the window [{lo}, {hi}]")
        out = np.empty((2, xarr.size))
        if self._series_psi0 is not None:
            in_series = xarr < min(SERIES_STEP_RADIUS, self.grid[1])
            if np.any(in_series):
                pairs = [_regular_series(float(r)) for r in xarr[in_series]]
                out[:, in_series] = self._series_psi0 * np.array(pairs).T
            if np.any(~in_series):
                out[:, ~in_series] = self._dense(xarr[~in_series])
        else:
            out[:] = self._dense(xarr)
        return out

    def __call__(self, x):
        out = self._eval(x)[0]
        return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))

    def slope(self, x):
        out = self._eval(x)[1]
        return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))


def integrate(problem: IvpProblem, rel_tol: float = 1e-10,
              abs_tol: float = 1e-12, max_steps: int = 200_000) -> WaveSolution:
    """Adaptively integrate a wave-equation IVP with dense output.

    Runge-Kutta 4(5) with error control; tolerances are clamped to a window
    where the method is actually trustworthy rather than silently accepted.
    A 3D problem starting exactly at the origin steps off it with the
    ascending series of the equation (the origin is a regular singular
    point, so the ODE itself cannot be started there).
    """
    if not (1e-12 <= rel_tol <= 1e-3):
        raise ToleranceError(
            f"rel_tol must lie in [1e-12, 1e-3], got {rel_tol:g}"
        )
    if not (0.0 < abs_tol <= 1e-3):
        raise ToleranceError(
            f"abs_tol must lie in (0, 1e-3], got {abs_tol:g}"
        )

    t0 = problem.start
    y0 = np.array([problem.psi0, problem.dpsi0], dtype=float)
    series_psi0 = None
    if problem.kind is WaveEquation.WAVE_3D and problem.start == 0.0:
        series_psi0 = problem.psi0
        t0 = min(SERIES_STEP_RADIUS, 0.5 * problem.end)
        v, d = _regular_series(t0)
        y0 = np.array([problem.psi0 * v, problem.psi0 * d])

    solver = RK45(_rhs(problem.kind), t0, y0, problem.end,
                  rtol=rel_tol, atol=abs_tol)
    ts = [t0]
    states = [y0]
    interpolants = []
    for _ in range(max_steps):
        if solver.status == "finished":
            break
        if solver.status == "failed":
            raise StepUnderflowError(
                f"step size underflow near coord = {solver.t:.6g}"
            )
        solver.step()
        if not np.all(np.isfinite(solver.y)):
            raise StepUnderflowError(
                f"solution lost finiteness near coord = {solver.t:.6g}"
            )
        interpolants.append(solver.dense_output())
        ts.append(solver.t)
        states.append(solver.y.copy())
    else:
        raise StepUnderflowError(
            f"step budget of {max_steps} exhausted near coord = {solver.t:.6g} "
            f"(window [{problem.start}, {problem.end}])"
        )

    dense = OdeSolution(ts, interpolants)
    grid = np.array(ts)
    states_arr = np.array(states)
    if series_psi0 is not None and problem.start == 0.0:
        grid = np.concatenate(([0.0], grid))
        states_arr = np.vstack(([problem.psi0, 0.0], states_arr))
    order = np.argsort(grid)
    return WaveSolution(
        problem=problem,
        grid=grid[order],
        values=states_arr[order, 0],
        slopes=states_arr[order, 1],
        n_steps=len(interpolants),
        n_rhs=solver.nfev,
        _dense=dense,
        _series_psi0=series_psi0,
    )


# ---------------------------------------------------------------------------
# Residual evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ResidualReport:
    """Pointwise residuals of a candidate against a wave equation."""

    kind: WaveEquation
    grid: np.ndarray
    residuals: np.ndarray
    tolerance: float
    mode: str

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.residuals)))

    @property
    def passed(self) -> bool:
        return self.max_abs <= self.tolerance

    def summary(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return (
            f"{self.kind.value} residual ({self.mode}): max |res| = "
            f"{self.max_abs:.3e} vs tol {self.tolerance:.1e} -> {verdict}"
        )


def _residual_values(kind: WaveEquation, x, v, d1, d2):
    if kind is WaveEquation.WAVE_1D:
        return d2 + v / x ** 4
    return d2 + 2.0 * d1 / x + x ** 4 * v


def _local_wavelength(kind: WaveEquation, x: np.ndarray) -> np.ndarray:
    # local wavenumber is the medium index: 1/x**2 (1D), r**2 (3D)
    if kind is WaveEquation.WAVE_1D:
        return 2.0 * np.pi * x ** 2
    return 2.0 * np.pi / x ** 2


def residual(kind: WaveEquation, psi, grid, tolerance: float,
             points_per_wavelength: float = 5.0) -> ResidualReport:
    """Residual of a candidate solution on the given grid.

    A :class:`SmoothFunction` is differentiated analytically node by node.
    Anything else (numerical solution, bare callable, sampled values) is
    run through fourth-order finite-difference stencils, which requires a
    uniform grid fine enough to resolve the local oscillation: at least
    ``points_per_wavelength`` nodes per local wavelength 2 pi / n(x),
    enforced rather than assumed.  FD residuals cover the interior nodes
    (the two-node margins have no centered stencil).
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 5:
        raise ValueError("residual needs a 1D grid with at least 5 nodes")
    if np.any(grid <= 0.0) and kind is WaveEquation.WAVE_3D:
        raise ValueError("3D residual grid must satisfy r > 0")
    if kind is WaveEquation.WAVE_1D and (np.any(grid == 0.0)
                                         or grid[0] * grid[-1] < 0.0):
        raise ValueError("1D residual grid must stay on one side of 0")

    if isinstance(psi, SmoothFunction):
        v = np.array([psi.value(x) for x in grid], dtype=float)
        d1 = np.array([psi.d1(x) for x in grid], dtype=float)
        d2 = np.array([psi.d2(x) for x in grid], dtype=float)
        res = _residual_values(kind, grid, v, d1, d2)
        return ResidualReport(kind=kind, grid=grid, residuals=res,
                              tolerance=tolerance, mode="analytic")

    if isinstance(psi, ScalarField1D):
        if not (grid.size == len(psi) and np.allclose(grid, psi.grid)):
            raise ValueError("grid argument must match the field's grid")
        vals = psi.values
    elif callable(psi):
        vals = np.array([psi(x) for x in grid], dtype=float)
    else:
        vals = np.asarray(psi, dtype=float)
        if vals.shape != grid.shape:
            raise ValueError("sampled psi must match the grid shape")

    h = uniform_spacing(grid)
    min_wavelength = float(np.min(_local_wavelength(kind, grid)))
    if h > min_wavelength / points_per_wavelength:
        raise UnderResolvedGridError(
            f"grid spacing {h:.3e} exceeds {min_wavelength:.3e}/"
            f"{points_per_wavelength:g} (shortest local wavelength / required "
            "points per wavelength); refine the grid"
        )
    d1, d2, interior = grid_derivatives(vals, h)
    x_in = grid[interior]
    res = _residual_values(kind, x_in, vals[interior], d1, d2)
    return ResidualReport(kind=kind, grid=x_in, residuals=res,
                          tolerance=tolerance, mode="fd")


# ---------------------------------------------------------------------------
# Nodes
# ---------------------------------------------------------------------------


def _scan_grid(kind: Optional[WaveEquation], span, scan_points) -> np.ndarray:
    a, b = float(span[0]), float(span[1])
    if not a < b:
        raise ValueError(f"span must be a nonempty interval, got ({a}, {b})")
    if kind is WaveEquation.WAVE_1D:
        if a <= 0.0 <= b:
            raise ValueError(
                "1D node scan must stay on one side of 0 (nodes accumulate there)"
            )
        # uniform in 1/x: phase of the 1D wave is linear in 1/x, so this
        # places a fixed number of samples per oscillation
        n = max(64, int(np.ceil(abs(1.0 / a - 1.0 / b) * 8.0 / np.pi)) + 1)
        return np.sort(1.0 / np.linspace(1.0 / a, 1.0 / b, n))
    if kind is WaveEquation.WAVE_3D:
        if a < 0.0:
            raise ValueError("3D node scan needs r >= 0")
        # phase goes like r**3/3: uniform in r**3 resolves every oscillation
        n = max(64, int(np.ceil((b ** 3 - a ** 3) * 8.0 / (3.0 * np.pi))) + 1)
        return np.cbrt(np.linspace(a ** 3, b ** 3, n))
    return np.linspace(a, b, scan_points or 2001)


def node_locations(psi: Callable, span, kind: Optional[WaveEquation] = None,
                   xtol: float = 1e-12, scan_points: Optional[int] = None,
                   merge_tol: float = 1e-10) -> np.ndarray:
    """Zeros of a wave on a span, by sign-change bracketing and bisection.

    When ``kind`` is given the scan grid is warped (uniform in 1/x for 1D,
    in r**3 for 3D) so the accelerating oscillation near the singular ends
    cannot slip a node between samples; otherwise a plain uniform scan of
    ``scan_points`` nodes is used.  Roots closer than ``merge_tol`` are
    merged; tangential zeros without a sign change are not claimed.
    """
    xs = _scan_grid(kind, span, scan_points)
    fs = np.array([float(psi(x)) for x in xs])
    roots = [float(x) for x, f in zip(xs, fs) if f == 0.0]
    idx = np.nonzero(fs[:-1] * fs[1:] < 0.0)[0]
    for i in idx:
        roots.append(float(bisect(lambda x: float(psi(x)), xs[i], xs[i + 1],
                                  xtol=xtol)))
    roots.sort()
    merged: list[float] = []
    for r in roots:
        if not merged or r - merged[-1] > merge_tol:
            merged.append(r)
    return np.array(merged)
