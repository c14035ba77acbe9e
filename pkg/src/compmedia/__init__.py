"""Compensating quantum media: exact waves and their independent checks.

A medium whose refractive index profile cancels the quantum correction of
the phase-amplitude equations carries waves whose eikonal phase is exact at
every wavelength.  This package implements the two known closed-form cases
(a 1D medium with index 1/x**2 and a radial one with index r**2), the
functionals that certify the cancellation, and a numerical layer that
re-derives everything from the differential equations without trusting the
closed forms.

Modules
-------
units      dimensional <-> dimensionless bridge
specfun    self-contained gamma and fractional-order Bessel J
fields     grid containers, smooth-profile triples, FD helpers
media      the closed-form media and waves
quantumhj  quantum corrections, log-momentum equation, amplitude/phase split
odesolve   independent wave-equation integration, residuals, nodes
cli        command-line verification, solves and figure data
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
