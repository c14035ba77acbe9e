"""Dimensional bookkeeping for the compensating-media calculations.

Everything else in this package works in dimensionless coordinates: lengths
are measured in units of the reduced de Broglie length

    lam = hbar / sqrt(2 m E),

momenta in units of hbar / lam = sqrt(2 m E), actions in units of hbar and
energies in units of the total energy E.  This module is the only place
where dimensional quantities appear; it converts lab-frame positions into
the scaled coordinates the closed forms expect and back.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PhysicalParams",
    "ScaledCoords",
    "lambda_bar",
    "momentum_scale",
    "to_dimensionless",
    "from_dimensionless",
    "to_scaled",
]


@dataclass(frozen=True)
class PhysicalParams:
    """Mass and total energy of the particle, plus the action scale hbar.

    With the default ``hbar = 1`` and ``2 * mass * energy = 1`` the
    de Broglie length is 1 and dimensional and dimensionless coordinates
    coincide.
    """

    mass: float
    energy: float
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.mass > 0.0):
            raise ValueError(f"mass must be positive, got {self.mass}")
        if not (self.energy > 0.0):
            raise ValueError(f"energy must be positive, got {self.energy}")
        if not (self.hbar > 0.0):
            raise ValueError(f"hbar must be positive, got {self.hbar}")


@dataclass(frozen=True)
class ScaledCoords:
    """Coordinate split into the pair (zeta, sqrt(E)).

    ``zeta = sqrt(2 m) x / hbar`` carries dimension [energy]^(-1/2) and
    ``sqrtE`` carries [energy]^(1/2); their product is the dimensionless
    coordinate x / lam.  ``zeta`` may take either sign (the 1D medium lives
    on both half-lines) but the energy factor must be strictly positive.
    """

    zeta: float
    sqrtE: float

    def __post_init__(self):
        if not (self.sqrtE > 0.0):
            raise ValueError(f"sqrtE must be positive, got {self.sqrtE}")

    @property
    def product(self) -> float:
        """The dimensionless coordinate zeta * sqrt(E) = x / lam."""
        return self.zeta * self.sqrtE


def lambda_bar(params: PhysicalParams) -> float:
    """Reduced de Broglie length hbar / sqrt(2 m E)."""
    return params.hbar / math.sqrt(2.0 * params.mass * params.energy)


def momentum_scale(params: PhysicalParams) -> float:
    """Classical momentum sqrt(2 m E) of a free particle at energy E."""
    return math.sqrt(2.0 * params.mass * params.energy)


def to_dimensionless(x, params: PhysicalParams):
    """Map a lab-frame position (scalar or array) to x / lam."""
    return x / lambda_bar(params)


def from_dimensionless(x_tilde, params: PhysicalParams):
    """Inverse of :func:`to_dimensionless`."""
    return x_tilde * lambda_bar(params)


def to_scaled(x: float, params: PhysicalParams) -> ScaledCoords:
    """Split a lab-frame position into the (zeta, sqrt(E)) pair.

    The split keeps the energy dependence explicit so that parameter scans
    over E reuse the same zeta grid; ``to_scaled(x, p).product`` equals
    ``to_dimensionless(x, p)`` up to roundoff.
    """
    zeta = math.sqrt(2.0 * params.mass) * x / params.hbar
    return ScaledCoords(zeta=zeta, sqrtE=math.sqrt(params.energy))
