"""Phase-amplitude decomposition and its quantum corrections.

Writing psi = A exp(iS) turns the wave equation into an eikonal relation
(dS/dx)**2 = n**2 + (correction) plus a transport equation for A.  The
correction term -- the quantum potential in disguise -- is what separates
geometrical optics from the exact wave picture, and a *compensating* medium
is precisely one where it vanishes identically.

This module evaluates those corrections for arbitrary momentum profiles
(closed-form, finite-differenced, or sampled), checks the nonlinear
equation satisfied by the log-momentum Q = ln p, integrates that equation
as an initial-value problem, and splits sampled waves back into amplitude
and phase to verify flux transport.

Conventions: coordinates are dimensionless (units of the de Broglie
length), p = n, and the corrections are normalized so that the eikonal is
exact if and only if they are zero:

    1D:        (3/4)(p'/p)**2 - p''/(2p)
    3D radial: (3/4)(p'/p)**2 - p''/(2p) - p'/(r p)   [= sqrt(p) lap(1/sqrt(p))]

In log form the vanishing of the 1D correction is Q'' = (Q')**2/2 and of
the 3D one Q'' + (2/r) Q' = (Q')**2/2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
from scipy.integrate import OdeSolution, RK45, cumulative_simpson

from .fields import (
    DEFAULT_FD_STEP,
    Geometry,
    InsufficientGridError,
    ScalarField1D,
    SmoothFunction,
    grid_derivatives,
    uniform_spacing,
)

__all__ = [
    "NonpositiveMomentumError",
    "QBlowupError",
    "LogMomentum",
    "PhaseAmplitude",
    "quantum_correction_1d",
    "quantum_correction_3d",
    "quantum_correction_3d_with_flux",
    "q_residual",
    "solve_q_ivp",
    "decompose",
]

ProfileLike = Union[SmoothFunction, Callable]


class NonpositiveMomentumError(ValueError):
    """Momentum profile fails p > 0 somewhere it is needed."""


class QBlowupError(RuntimeError):
    """The log-momentum IVP ran into a movable singularity (or stalled)."""


def _as_profile(p: ProfileLike, h: float) -> SmoothFunction:
    if isinstance(p, SmoothFunction):
        return p
    if callable(p):
        return SmoothFunction.from_callable(p, h)
    raise TypeError(f"expected a SmoothFunction or callable, got {type(p)!r}")


def _checked_log_derivatives(prof: SmoothFunction, x):
    """(p'/p, p''/p) with the positivity of p enforced."""
    val = np.asarray(prof.value(x), dtype=float)
    if np.any(val <= 0.0) or not np.all(np.isfinite(val)):
        raise NonpositiveMomentumError(
            "momentum must be finite and strictly positive"
        )
    lp1 = np.asarray(prof.d1(x), dtype=float) / val
    lp2 = np.asarray(prof.d2(x), dtype=float) / val
    if np.ndim(x) == 0:
        return float(lp1), float(lp2)
    return lp1, lp2


def quantum_correction_1d(p: ProfileLike, x, h: float = DEFAULT_FD_STEP):
    """1D quantum correction (3/4)(p'/p)**2 - p''/(2p) at x.

    Accepts a closed form with analytic derivatives or any callable (then
    differentiated by Richardson extrapolation with step h).  Zero exactly
    when p is constant or p = 1/x**2.
    """
    prof = _as_profile(p, h)
    lp1, lp2 = _checked_log_derivatives(prof, x)
    return 0.75 * lp1 * lp1 - 0.5 * lp2


def quantum_correction_3d(p: ProfileLike, r, h: float = DEFAULT_FD_STEP,
                          form: str = "amplitude"):
    """Radial quantum correction at r > 0, by either of two routes.

    form="amplitude" evaluates sqrt(p) * lap(1/sqrt(p)) written out in
    p-derivatives; form="log" goes through Q = ln p instead.  The two are
    algebraically identical, so their agreement is a cheap internal check
    (and a test).  Zero exactly for constant p and for p = r**2.
    """
    prof = _as_profile(p, h)
    lp1, lp2 = _checked_log_derivatives(prof, r)
    rr = np.asarray(r, dtype=float)
    if form == "amplitude":
        out = 0.75 * lp1 * lp1 - 0.5 * lp2 - lp1 / rr
    elif form == "log":
        q1 = lp1
        q2 = lp2 - lp1 * lp1
        out = 0.5 * (0.5 * q1 * q1 - q2 - 2.0 * q1 / rr)
    else:
        raise ValueError(f"form must be 'amplitude' or 'log', got {form!r}")
    return float(out) if np.ndim(r) == 0 else out


def quantum_correction_3d_with_flux(p: ProfileLike, flux: ProfileLike, r,
                                    h: float = DEFAULT_FD_STEP):
    """Radial correction for a wave carrying a position-dependent flux F(r).

    The amplitude then is sqrt(F/p)/r up to a constant, and two extra terms
    appear on top of the constant-flux bracket:

        lap(sqrt(F))/sqrt(F) + 2 sqrt(p/F) (1/sqrt(p))' (sqrt(F))'

    For constant F both vanish and this reduces exactly to
    :func:`quantum_correction_3d`; that reduction is asserted in the tests
    rather than assumed here.
    """
    prof = _as_profile(p, h)
    fprof = _as_profile(flux, h)
    base = quantum_correction_3d(prof, r, h=h, form="amplitude")

    fval = np.asarray(fprof.value(r), dtype=float)
    if np.any(fval <= 0.0):
        raise NonpositiveMomentumError("flux must be strictly positive")
    f1 = np.asarray(fprof.d1(r), dtype=float)
    f2 = np.asarray(fprof.d2(r), dtype=float)
    # s = sqrt(F): s'/s and s''/s in terms of F
    s1_over_s = 0.5 * f1 / fval
    s2_over_s = 0.5 * f2 / fval - 0.25 * (f1 / fval) ** 2
    lap_term = s2_over_s + 2.0 / np.asarray(r, dtype=float) * s1_over_s

    pval = np.asarray(prof.value(r), dtype=float)
    if np.any(pval <= 0.0):
        raise NonpositiveMomentumError("momentum must be strictly positive")
    p1 = np.asarray(prof.d1(r), dtype=float)
    # 2 sqrt(p/F) (p**-1/2)' (sqrt F)' = -(p'/p) * s'/s
    cross_term = -(p1 / pval) * s1_over_s

    out = base + lap_term + cross_term
    return float(out) if np.ndim(r) == 0 else out


# ---------------------------------------------------------------------------
# The log-momentum equation Q'' (+ 2Q'/r) = (Q')**2 / 2
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LogMomentum:
    """Q = ln p sampled on a grid, together with its slope Q'."""

    grid: np.ndarray
    values: np.ndarray
    slope: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        slope = np.asarray(self.slope, dtype=float)
        if not (grid.shape == values.shape == slope.shape) or grid.ndim != 1:
            raise ValueError("grid, values and slope must be matching 1D arrays")
        if not np.all(np.diff(grid) > 0.0):
            raise ValueError("grid must be strictly increasing")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "slope", slope)

    @property
    def momentum(self) -> np.ndarray:
        """p = exp(Q); positive by construction."""
        return np.exp(self.values)

    def as_field(self) -> ScalarField1D:
        return ScalarField1D(self.grid, self.values)


def _q_operator(kind: Geometry, coord, q1, q2):
    if kind is Geometry.ONE_D:
        return q2 - 0.5 * q1 * q1
    return q2 + 2.0 * q1 / coord - 0.5 * q1 * q1


def q_residual(kind: Geometry, q, coord=None, h: float = DEFAULT_FD_STEP):
    """Residual of the log-momentum equation for a candidate Q.

    For a closed form or callable the residual is evaluated at ``coord``
    (scalar or array).  For a sampled :class:`LogMomentum` the equation is
    treated as first order in the stored slope u = Q' (it is autonomous in
    u), so only one fourth-order stencil derivative is taken -- of the slope
    array -- which keeps sampling noise from being amplified by 1/h**2.
    ``coord=None`` returns the residual at every interior node; a uniform
    grid with at least five nodes is required.
    """
    if isinstance(q, LogMomentum):
        spacing = uniform_spacing(q.grid)
        du, _, interior = grid_derivatives(q.slope, spacing)
        res = _q_operator(kind, q.grid[interior], q.slope[interior], du)
        if coord is None:
            return res
        idx = ScalarField1D(q.grid, q.values).node_index(float(coord))
        if not (2 <= idx < q.grid.size - 2):
            raise InsufficientGridError(
                f"coordinate {coord} has no interior stencil on this grid"
            )
        return float(res[idx - 2])
    prof = _as_profile(q, h)
    if coord is None:
        raise TypeError("coord is required unless q is a sampled LogMomentum")
    q1 = prof.d1(coord)
    q2 = prof.d2(coord)
    out = _q_operator(kind, np.asarray(coord, dtype=float) if np.ndim(coord) else coord,
                      q1, q2)
    return float(out) if np.ndim(coord) == 0 else out


_BLOWUP_LIMIT = 1e8


def solve_q_ivp(kind: Geometry, qprime0: float, span, coord0: float = 1.0,
                q0: float = 0.0, rel_tol: float = 1e-12, abs_tol: float = 1e-14,
                n_points: int = 601, max_steps: int = 100_000) -> LogMomentum:
    """Integrate the log-momentum equation from (coord0, q0, qprime0).

    The equation is nonlinear (Riccati in Q'), so generic initial slopes
    drive Q' into a movable pole at finite distance; hitting one raises
    :class:`QBlowupError` rather than silently returning garbage.  The
    solution is returned sampled on ``n_points`` uniform nodes across
    ``span``, which must contain ``coord0`` and stay clear of coord = 0.
    """
    a, b = float(span[0]), float(span[1])
    if not a < b:
        raise ValueError(f"span must be a nonempty interval, got ({a}, {b})")
    if not a <= coord0 <= b:
        raise ValueError(f"coord0 = {coord0} must lie inside span ({a}, {b})")
    if kind is Geometry.ONE_D and a <= 0.0 <= b:
        raise ValueError("1D span must stay on one side of the singular point 0")
    if kind is Geometry.THREE_D and a <= 0.0:
        raise ValueError("3D span must satisfy r > 0")
    if not (np.isfinite(qprime0) and np.isfinite(q0)):
        raise ValueError("initial data must be finite")
    if n_points < 2:
        raise ValueError("n_points must be at least 2")

    if kind is Geometry.ONE_D:
        def rhs(t, y):
            return np.array([y[1], 0.5 * y[1] * y[1]])
    else:
        def rhs(t, y):
            return np.array([y[1], 0.5 * y[1] * y[1] - 2.0 * y[1] / t])

    y0 = np.array([q0, qprime0], dtype=float)

    def sweep(t_end: float) -> Optional[OdeSolution]:
        if t_end == coord0:
            return None
        solver = RK45(rhs, coord0, y0, t_end, rtol=rel_tol, atol=abs_tol)
        ts = [coord0]
        interpolants = []
        for _ in range(max_steps):
            if solver.status == "finished":
                break
            if solver.status == "failed":
                raise QBlowupError(
                    f"integrator failed near coord = {solver.t:.6g} "
                    "(movable singularity of the log-momentum equation)"
                )
            solver.step()
            if not np.all(np.isfinite(solver.y)) or np.any(
                np.abs(solver.y) > _BLOWUP_LIMIT
            ):
                raise QBlowupError(
                    f"log-momentum blow-up near coord = {solver.t:.6g}"
                )
            interpolants.append(solver.dense_output())
            ts.append(solver.t)
        else:
            raise QBlowupError(
                f"no convergence within {max_steps} steps (stalled near "
                f"coord = {solver.t:.6g})"
            )
        return OdeSolution(ts, interpolants)

    sol_fwd = sweep(b)
    sol_bwd = sweep(a)

    grid = np.linspace(a, b, n_points)
    out = np.empty((2, n_points))
    left = grid < coord0
    if np.any(left):
        out[:, left] = sol_bwd(grid[left])
    if np.any(~left):
        sol = sol_fwd if sol_fwd is not None else sol_bwd
        out[:, ~left] = sol(grid[~left])
    # the sample at coord0 itself is exact initial data when it lands on a node
    exact = np.isclose(grid, coord0, rtol=0.0, atol=1e-14 * max(abs(a), abs(b)))
    out[0, exact] = q0
    out[1, exact] = qprime0
    return LogMomentum(grid=grid, values=out[0], slope=out[1])


# ---------------------------------------------------------------------------
# Amplitude / phase split of a sampled wave
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PhaseAmplitude:
    """Amplitude envelope and accumulated phase of a sampled wave.

    ``momentum`` holds the local S' samples used to build the phase, and
    ``flux`` the conserved combination (A**2 S' in 1D, r**2 A**2 S' in 3D);
    its flatness across the grid is the transport check.
    """

    geometry: Geometry
    amplitude: ScalarField1D
    phase: ScalarField1D
    momentum: np.ndarray

    def __post_init__(self):
        if self.amplitude.grid.shape != self.phase.grid.shape or not np.array_equal(
            self.amplitude.grid, self.phase.grid
        ):
            raise ValueError("amplitude and phase must share one grid")
        if np.any(self.amplitude.values < 0.0):
            raise ValueError("amplitude must be nonnegative")

    @property
    def grid(self) -> np.ndarray:
        return self.amplitude.grid

    @property
    def flux(self) -> np.ndarray:
        a2s = self.amplitude.values ** 2 * self.momentum
        if self.geometry is Geometry.ONE_D:
            return a2s
        return self.grid ** 2 * a2s

    def flux_drift(self) -> float:
        """Max relative deviation of the conserved flux across the grid."""
        f = self.flux
        ref = float(np.median(f))
        if ref == 0.0:
            return float(np.max(np.abs(f)))
        return float(np.max(np.abs(f - ref)) / abs(ref))


def decompose(psi, momentum, kind: Geometry, grid=None,
              h: float = DEFAULT_FD_STEP) -> PhaseAmplitude:
    """Split a sampled wave into amplitude envelope and accumulated phase.

    ``psi`` is a :class:`ScalarField1D` or an array with ``grid`` given
    alongside; ``momentum`` a closed form, callable or array of S' samples
    on the same grid.  The envelope comes from the momentum alone (A is
    proportional to 1/sqrt(p) in 1D and to 1/(r sqrt(p)) in 3D), scaled so
    it touches the extremal excursion of psi * (envelope shape)**-1; the
    phase is the running integral of the momentum.  Grids containing
    momentum zeros (or, in 3D, the origin) are rejected: there the split is
    not defined.
    """
    if isinstance(psi, ScalarField1D):
        field = psi
    else:
        if grid is None:
            raise TypeError("grid is required when psi is a bare array")
        field = ScalarField1D(np.asarray(grid, dtype=float),
                              np.asarray(psi, dtype=float))
    x = field.grid

    if isinstance(momentum, np.ndarray):
        pvals = np.asarray(momentum, dtype=float)
        if pvals.shape != x.shape:
            raise ValueError("momentum samples must match the grid")
    else:
        prof = _as_profile(momentum, h)
        pvals = np.asarray(prof.value(x), dtype=float)
    if np.any(pvals <= 0.0) or not np.all(np.isfinite(pvals)):
        bad = int(np.sum(~(pvals > 0.0)))
        raise NonpositiveMomentumError(
            f"momentum must be positive on the whole grid ({bad} bad nodes)"
        )
    if kind is Geometry.THREE_D and x[0] <= 0.0:
        raise ValueError("3D decomposition needs a grid with r > 0")

    shape = 1.0 / np.sqrt(pvals)
    if kind is Geometry.THREE_D:
        shape = shape / x
    scale = float(np.max(np.abs(field.values) / shape))
    amplitude = ScalarField1D(x, scale * shape)

    phase_vals = np.concatenate(
        ([0.0], cumulative_simpson(pvals, x=x))
    )
    phase = ScalarField1D(x, phase_vals)
    return PhaseAmplitude(
        geometry=kind, amplitude=amplitude, phase=phase, momentum=pvals
    )
