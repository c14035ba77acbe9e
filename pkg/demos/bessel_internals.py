"""Inside the special-function layer: Gamma and J of order 1/6.

Everything the radial wave needs is computed in-house -- a Lanczos Gamma,
ascending Bessel series (exact-rational in the cancellation zone), and the
Hankel large-argument expansion -- so the package verifies the closed
forms without borrowing scipy.special as an oracle.

Run:  python3 demos/bessel_internals.py
"""
import math

import numpy as np

from compmedia.specfun import (
    ORDER_MINUS_SIXTH,
    ORDER_PLUS_SIXTH,
    SERIES_ASYMPTOTIC_CROSSOVER,
    bessel_j,
    bessel_j_first_zero,
    bessel_j_prime,
    gamma,
)
from compmedia import specfun


def banner(title):
    print()
    print("=" * 72)
    print(title)
    print("=" * 72)


banner("Gamma")
print(f"Gamma(7/6) = {gamma(7 / 6):.15f}")
print(f"Gamma(5/6) = {gamma(5 / 6):.15f}")
print(f"Gamma(1/6) = {gamma(1 / 6):.15f}")
product = gamma(7 / 6) * gamma(5 / 6)
print(f"reflection check: Gamma(7/6) Gamma(5/6) = {product:.15f}")
print(f"                  pi/3                  = {math.pi / 3:.15f}")

banner("J_(+-1/6): three evaluation regimes")
print(f"""
  z <= 9                float ascending series
  9 < z <= {SERIES_ASYMPTOTIC_CROSSOVER:.0f}           exact-rational series (the alternating terms
                        peak near |term| ~ z^k/k!^2 and cancel down by
                        orders of magnitude; Fractions avoid the loss)
  z > {SERIES_ASYMPTOTIC_CROSSOVER:.0f}                Hankel expansion, truncated at its smallest term
""")
print(f"{'z':>6} {'J_+1/6':>22} {'J_-1/6':>22}")
for z in (0.5, 2.0, 10.0, 13.0, 21.0):
    print(f"{z:6.1f} {bessel_j(ORDER_PLUS_SIXTH, z):22.15f}"
          f" {bessel_j(ORDER_MINUS_SIXTH, z):22.15f}")

banner("Crossover-band agreement")
print("Across z in [0.8, 1.2] x crossover both branches run and agree:")
worst = 0.0
for z in np.linspace(0.8 * SERIES_ASYMPTOTIC_CROSSOVER,
                     1.2 * SERIES_ASYMPTOTIC_CROSSOVER, 9):
    s = specfun._series_exact(1, float(z))
    a = specfun._bessel_asymptotic(1 / 6, float(z))
    worst = max(worst, abs(s - a))
    print(f"    z = {z:5.2f}: series {s:+.15f}  asymptotic {a:+.15f}")
print(f"worst disagreement: {worst:.2e}")

banner("Wronskian identity")
print("J_nu J'_-nu - J_-nu J'_nu = -1/(pi z) for nu = 1/6, any z:")
for z in (0.1, 2.0, 14.0, 40.0):
    w = (bessel_j(ORDER_PLUS_SIXTH, z) * bessel_j_prime(ORDER_MINUS_SIXTH, z)
         - bessel_j(ORDER_MINUS_SIXTH, z) * bessel_j_prime(ORDER_PLUS_SIXTH, z))
    print(f"    z = {z:5.1f}: {w:+.15f}   target {-1 / (math.pi * z):+.15f}")

banner("First zero of J_1/6")
zero = bessel_j_first_zero()
print(f"j_(1/6,1) = {zero:.15f}")
print(f"J_1/6 there: {bessel_j(ORDER_PLUS_SIXTH, zero):+.2e}")
print(f"sits between the first zeros of J_0 (2.405) and J_1 (3.832)")
print(f"and fixes the radial wave's first node at (3 j)^(1/3) = "
      f"{(3 * zero) ** (1 / 3):.10f}")
