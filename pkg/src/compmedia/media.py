"""Closed forms of the two compensating media.

A compensating medium is one whose refractive index makes the quantum
correction of the phase-amplitude equations vanish identically, so the
eikonal (classical) phase is exact at every wavelength.  Two such media are
implemented, both in dimensionless coordinates (lengths in units of the
de Broglie length, energies in units of E):

1D, on either half-line x != 0:
    n(x) = p(x) = 1/x**2,   S(x) = -1/x,   V/E = 1 - 1/x**4,
    psi(x) = C x sin(1/x).

3D, radial:
    n(r) = p(r) = r**2,     S(r) = r**3/3,  V/E = 1 - r**4,
    psi(r) = C2 6**(-1/6) Gamma(7/6) J_{1/6}(r**3/3) / sqrt(r),
with psi regular at the origin, psi(0) = C2 / 6**(1/3).

The index and the potential are tied by n**2 = 1 - V/E, and both potentials
are the constant E plus an attractive quartic singular tail; those singular
tails live in :class:`SingularPotentialForm` so the identity V/E = 1 + U/E
holds bitwise, not just approximately.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import Geometry, SmoothFunction
from .specfun import (
    ORDER_MINUS_SIXTH,
    ORDER_PLUS_SIXTH,
    bessel_j,
    bessel_j_prime,
    bessel_j_second,
    gamma,
)
from .units import ScaledCoords

__all__ = [
    "SingularCoordinateError",
    "MediumKindError",
    "SingularPotentialForm",
    "MediumSpec",
    "SMALL_RADIUS_SWITCH",
    "index_1d",
    "momentum_1d",
    "action_1d",
    "potential_1d",
    "psi_1d",
    "psi_1d_derivatives",
    "psi_1d_scaled",
    "index_3d",
    "momentum_3d",
    "action_3d",
    "potential_3d",
    "psi_3d",
    "psi_3d_derivatives",
    "psi_3d_general",
    "psi_3d_scaled",
    "singular_potential",
    "compensating_wave_1d",
    "compensating_wave_3d",
    "compensating_momentum_1d",
    "compensating_momentum_3d",
    "compensating_log_momentum_1d",
    "compensating_log_momentum_3d",
]


class SingularCoordinateError(ValueError):
    """Evaluation requested at a coordinate where the form is singular."""


class MediumKindError(ValueError):
    """An operation was asked of the wrong medium geometry."""


# Below this radius the 3D wave switches from the Bessel form (which pits
# 1/sqrt(r) against J ~ r**(1/2)) to its ascending series in r.
SMALL_RADIUS_SWITCH = 0.5

# Radial series psi = C2 6**(-1/3) sum a_n r**n from the recurrence
# a_{n+6} = -a_n / ((n + 6)(n + 7)), a_0 = 1; terms beyond r**30 are below
# 1e-20 for r <= 0.5.
_SERIES_COEFFS: tuple[tuple[int, float], ...]


def _radial_series_coeffs(n_max: int = 30) -> tuple[tuple[int, float], ...]:
    coeffs = []
    a, n = 1.0, 0
    while n <= n_max:
        coeffs.append((n, a))
        a = -a / ((n + 6.0) * (n + 7.0))
        n += 6
    return tuple(coeffs)


_SERIES_COEFFS = _radial_series_coeffs()

_SIXTH_ROOT_SIX = 6.0 ** (1.0 / 6.0)
_PSI3D_ORIGIN = 6.0 ** (-1.0 / 3.0)
_K3D = gamma(7.0 / 6.0) / _SIXTH_ROOT_SIX          # amplitude of the regular wave
_K3D_SINGULAR = gamma(5.0 / 6.0) / _SIXTH_ROOT_SIX  # amplitude of the 1/r partner


def _reject_zero(x, what: str):
    if np.any(np.asarray(x) == 0.0):
        raise SingularCoordinateError(f"{what} is singular at x = 0")


def _reject_negative(r, what: str):
    if np.any(np.asarray(r) < 0.0):
        raise ValueError(f"{what} needs r >= 0")


# ---------------------------------------------------------------------------
# 1D medium
# ---------------------------------------------------------------------------


def index_1d(x):
    """Refractive index n(x) = 1/x**2 of the 1D compensating medium."""
    _reject_zero(x, "index_1d")
    return 1.0 / np.square(np.asarray(x, dtype=float)) if np.ndim(x) else 1.0 / (x * x)


def momentum_1d(x):
    """Dimensionless momentum p(x); equals the index for this medium."""
    return index_1d(x)


def action_1d(x):
    """Reduced action S(x) = -1/x (in units of hbar), dS/dx = p."""
    _reject_zero(x, "action_1d")
    return -1.0 / np.asarray(x, dtype=float) if np.ndim(x) else -1.0 / x


def _u_over_e_1d(x):
    x = np.asarray(x, dtype=float) if np.ndim(x) else float(x)
    x2 = x * x
    return -1.0 / (x2 * x2)


def potential_1d(x):
    """V/E = 1 - 1/x**4; the constant plus the singular quartic tail."""
    _reject_zero(x, "potential_1d")
    return 1.0 + _u_over_e_1d(x)


def psi_1d(x, c: float = 1.0):
    """Exact 1D wave psi = C x sin(1/x), continued by psi(0) = 0."""
    if np.ndim(x) == 0:
        x = float(x)
        return 0.0 if x == 0.0 else c * x * math.sin(1.0 / x)
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    nz = x != 0.0
    out[nz] = c * x[nz] * np.sin(1.0 / x[nz])
    return out


def psi_1d_derivatives(x: float, c: float = 1.0):
    """(psi, psi', psi'') of the 1D wave at x != 0.

    The second derivative collapses to -psi/x**4, which is exactly the wave
    equation this solution satisfies; it is still computed term by term here
    so residual checks are not circular.
    """
    _reject_zero(x, "psi_1d_derivatives")
    s = math.sin(1.0 / x)
    co = math.cos(1.0 / x)
    psi = c * x * s
    d1 = c * (s - co / x)
    d2 = -c * s / (x * x * x)
    return psi, d1, d2


def psi_1d_scaled(coords: ScaledCoords, c: float = 1.0):
    """1D wave as a function of the (zeta, sqrt(E)) pair."""
    return psi_1d(coords.product, c)


# ---------------------------------------------------------------------------
# 3D medium
# ---------------------------------------------------------------------------


def index_3d(r):
    """Refractive index n(r) = r**2 of the radial compensating medium."""
    _reject_negative(r, "index_3d")
    return np.square(np.asarray(r, dtype=float)) if np.ndim(r) else r * r


def momentum_3d(r):
    """Dimensionless radial momentum p(r) = r**2."""
    return index_3d(r)


def action_3d(r):
    """Reduced radial action S(r) = r**3/3, dS/dr = p."""
    _reject_negative(r, "action_3d")
    r = np.asarray(r, dtype=float) if np.ndim(r) else float(r)
    return r * r * r / 3.0


def _u_over_e_3d(r):
    r = np.asarray(r, dtype=float) if np.ndim(r) else float(r)
    r2 = r * r
    return -(r2 * r2)


def potential_3d(r):
    """V/E = 1 - r**4; unbounded below, which is what traps no state."""
    _reject_negative(r, "potential_3d")
    return 1.0 + _u_over_e_3d(r)


def _psi_3d_series(r: float, c2: float):
    """Ascending series of the regular wave and its two derivatives."""
    v = d1 = d2 = 0.0
    for n, a in _SERIES_COEFFS:
        rn = r ** n if n else 1.0
        v += a * rn
        if n >= 1:
            d1 += a * n * r ** (n - 1)
        if n >= 2:
            d2 += a * n * (n - 1) * r ** (n - 2)
    k = c2 * _PSI3D_ORIGIN
    return k * v, k * d1, k * d2


def psi_3d(r, c2: float = 1.0):
    """Regular 3D wave, C2 6**(-1/6) Gamma(7/6) J_{1/6}(r**3/3) / sqrt(r).

    Near the origin the Bessel form is an indeterminate 0/0 ratio, so below
    ``SMALL_RADIUS_SWITCH`` the ascending series in r takes over; the two
    branches agree to rounding at the seam.
    """
    if np.ndim(r):
        return np.array([psi_3d(float(ri), c2) for ri in np.asarray(r).ravel()]).reshape(
            np.shape(r)
        )
    r = float(r)
    _reject_negative(r, "psi_3d")
    if r < SMALL_RADIUS_SWITCH:
        return _psi_3d_series(r, c2)[0]
    z = r * r * r / 3.0
    return c2 * _K3D * bessel_j(ORDER_PLUS_SIXTH, z) / math.sqrt(r)


def psi_3d_derivatives(r: float, c2: float = 1.0):
    """(psi, psi', psi'') of the regular 3D wave at r >= 0.

    For r past the series switch the chain rule through z = r**3/3 gives
        psi'  = K [ -J/(2 r**(3/2)) + r**(3/2) J' ]
        psi'' = K [ 3 J/(4 r**(5/2)) + r**(1/2) J' + r**(7/2) J'' ]
    with J, J', J'' all at order 1/6; the derivatives use shifted-order
    identities rather than the Bessel ODE, so wave-equation residuals stay
    meaningful.
    """
    r = float(r)
    _reject_negative(r, "psi_3d_derivatives")
    if r < SMALL_RADIUS_SWITCH:
        return _psi_3d_series(r, c2)
    z = r * r * r / 3.0
    j = bessel_j(ORDER_PLUS_SIXTH, z)
    jp = bessel_j_prime(ORDER_PLUS_SIXTH, z)
    jpp = bessel_j_second(ORDER_PLUS_SIXTH, z)
    k = c2 * _K3D
    sqr = math.sqrt(r)
    psi = k * j / sqr
    d1 = k * (-0.5 * j / (r * sqr) + r * sqr * jp)
    d2 = k * (0.75 * j / (r * r * sqr) + sqr * jp + r ** 3 * sqr * jpp)
    return psi, d1, d2


def psi_3d_general(r: float, c1: float, c2: float):
    """Two-parameter radial solution; behaves as C1/r + C2 6**(-1/3) near 0.

    The C1 partner carries J_{-1/6} and diverges at the origin, so r = 0 is
    only admitted when C1 vanishes.
    """
    r = float(r)
    _reject_negative(r, "psi_3d_general")
    if c1 == 0.0:
        return psi_3d(r, c2)
    if r == 0.0:
        raise SingularCoordinateError(
            "the C1 component diverges like 1/r at the origin"
        )
    z = r * r * r / 3.0
    part_sing = c1 * _K3D_SINGULAR * bessel_j(ORDER_MINUS_SIXTH, z)
    part_reg = c2 * _K3D * bessel_j(ORDER_PLUS_SIXTH, z)
    return (part_sing + part_reg) / math.sqrt(r)


def psi_3d_scaled(coords: ScaledCoords, c2: float = 1.0):
    """Radial wave as a function of the (zeta, sqrt(E)) pair."""
    rho = coords.product
    if rho < 0.0:
        raise ValueError("radial scaled coordinate must be >= 0")
    return psi_3d(rho, c2)


# ---------------------------------------------------------------------------
# Singular quartic potentials and the medium facade
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SingularPotentialForm:
    """The attractive quartic singular potential U/E of one geometry.

    These potentials support the exact compensating solutions only right at
    the continuum energy E; a nonzero binding offset would break the
    compensation, so it is rejected outright rather than silently ignored.
    """

    kind: Geometry
    binding_energy: float = 0.0

    def __post_init__(self):
        if self.binding_energy != 0.0:
            raise ValueError(
                "compensating solutions exist only at zero binding energy"
            )


def singular_potential(form: SingularPotentialForm, coord):
    """U/E of the given singular form: -1/x**4 (1D) or -r**4 (3D).

    The 1D form is the large-|x| tail of V - E and the 3D form the large-r
    tail of V itself; in both cases V/E = 1 + U/E holds exactly.
    """
    if form.kind is Geometry.ONE_D:
        _reject_zero(coord, "singular_potential")
        return _u_over_e_1d(coord)
    _reject_negative(coord, "singular_potential")
    return _u_over_e_3d(coord)


@dataclass(frozen=True)
class MediumSpec:
    """One compensating medium: geometry plus wave normalization."""

    kind: Geometry
    normalization: float = 1.0

    def index(self, coord):
        return index_1d(coord) if self.kind is Geometry.ONE_D else index_3d(coord)

    def momentum(self, coord):
        return self.index(coord)

    def action(self, coord):
        return action_1d(coord) if self.kind is Geometry.ONE_D else action_3d(coord)

    def potential(self, coord):
        return (
            potential_1d(coord) if self.kind is Geometry.ONE_D else potential_3d(coord)
        )

    def singular_form(self) -> SingularPotentialForm:
        return SingularPotentialForm(kind=self.kind)

    def psi(self, coord):
        if self.kind is Geometry.ONE_D:
            return psi_1d(coord, self.normalization)
        return psi_3d(coord, self.normalization)

    def psi_scaled(self, coords: ScaledCoords):
        if self.kind is Geometry.ONE_D:
            return psi_1d_scaled(coords, self.normalization)
        return psi_3d_scaled(coords, self.normalization)

    def psi_general(self, r, c1: float):
        if self.kind is not Geometry.THREE_D:
            raise MediumKindError(
                "the two-parameter radial solution exists only for the 3D medium"
            )
        return psi_3d_general(r, c1, self.normalization)

    def wave(self) -> SmoothFunction:
        if self.kind is Geometry.ONE_D:
            return compensating_wave_1d(self.normalization)
        return compensating_wave_3d(self.normalization)

    def momentum_profile(self) -> SmoothFunction:
        if self.kind is Geometry.ONE_D:
            return compensating_momentum_1d()
        return compensating_momentum_3d()

    def log_momentum_profile(self) -> SmoothFunction:
        if self.kind is Geometry.ONE_D:
            return compensating_log_momentum_1d()
        return compensating_log_momentum_3d()


# ---------------------------------------------------------------------------
# SmoothFunction factories (closed forms with analytic derivatives)
# ---------------------------------------------------------------------------


def compensating_wave_1d(c: float = 1.0) -> SmoothFunction:
    """The 1D wave with analytic derivatives, as a SmoothFunction."""
    return SmoothFunction(
        value=lambda x: psi_1d(x, c),
        d1=lambda x: psi_1d_derivatives(x, c)[1],
        d2=lambda x: psi_1d_derivatives(x, c)[2],
    )


def compensating_wave_3d(c2: float = 1.0) -> SmoothFunction:
    """The regular 3D wave with analytic derivatives."""
    return SmoothFunction(
        value=lambda r: psi_3d(r, c2),
        d1=lambda r: psi_3d_derivatives(r, c2)[1],
        d2=lambda r: psi_3d_derivatives(r, c2)[2],
    )


def compensating_momentum_1d() -> SmoothFunction:
    return SmoothFunction(
        value=lambda x: momentum_1d(x),
        d1=lambda x: -2.0 / x ** 3,
        d2=lambda x: 6.0 / x ** 4,
    )


def compensating_momentum_3d() -> SmoothFunction:
    return SmoothFunction(
        value=lambda r: momentum_3d(r),
        d1=lambda r: 2.0 * np.asarray(r, dtype=float) if np.ndim(r) else 2.0 * r,
        d2=lambda r: np.full_like(np.asarray(r, dtype=float), 2.0)
        if np.ndim(r)
        else 2.0,
    )


def compensating_log_momentum_1d() -> SmoothFunction:
    """Q = ln p = -2 ln|x| for the 1D medium."""
    return SmoothFunction(
        value=lambda x: -2.0 * np.log(np.abs(x)),
        d1=lambda x: -2.0 / x,
        d2=lambda x: 2.0 / np.square(x) if np.ndim(x) else 2.0 / (x * x),
    )


def compensating_log_momentum_3d() -> SmoothFunction:
    """Q = ln p = 2 ln r for the 3D medium."""
    return SmoothFunction(
        value=lambda r: 2.0 * np.log(r),
        d1=lambda r: 2.0 / r,
        d2=lambda r: -2.0 / np.square(r) if np.ndim(r) else -2.0 / (r * r),
    )
