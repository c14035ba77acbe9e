"""Tour of the two compensating media and their closed-form waves.

Run:  python3 demos/closed_forms_tour.py
"""
import math

import numpy as np

from compmedia.fields import Geometry
from compmedia.media import (
    MediumSpec,
    SingularPotentialForm,
    action_1d,
    action_3d,
    index_1d,
    index_3d,
    potential_1d,
    potential_3d,
    psi_1d,
    psi_3d,
    psi_3d_general,
    singular_potential,
)
from compmedia.units import PhysicalParams, ScaledCoords, lambda_bar, to_scaled


def banner(title):
    print()
    print("=" * 72)
    print(title)
    print("=" * 72)


banner("The two media")
print("""
A compensating medium is one whose momentum profile makes the quantum
correction of the generalized Hamilton-Jacobi equation vanish identically,
so the eikonal wave is *exact*, not just semiclassical.  There are two:

    1D:     n = p = 1/x^2     S = -1/x      V/E = 1 - 1/x^4
    radial: n = p = r^2       S = r^3/3     V/E = 1 - r^4
""")

print(f"{'x':>6} {'n_1d':>10} {'S_1d':>10} {'V_1d/E':>10}"
      f" {'n_3d':>10} {'S_3d':>10} {'V_3d/E':>10}")
for x in (0.25, 0.5, 1.0, 2.0, 4.0):
    print(f"{x:6.2f} {index_1d(x):10.4f} {action_1d(x):10.4f}"
          f" {potential_1d(x):10.4f} {index_3d(x):10.4f}"
          f" {action_3d(x):10.4f} {potential_3d(x):10.4f}")

banner("Potentials: identity and sign structure")
one_d = SingularPotentialForm(kind=Geometry.ONE_D)
three_d = SingularPotentialForm(kind=Geometry.THREE_D)
xs = np.linspace(0.2, 10.0, 1000)
split_1d = np.max(np.abs(potential_1d(xs) - (1.0 + singular_potential(one_d, xs))))
split_3d = np.max(np.abs(potential_3d(xs) - (1.0 + singular_potential(three_d, xs))))
print(f"V/E = 1 + U/E holds bitwise: max dev {split_1d:.1e} (1D), "
      f"{split_3d:.1e} (3D)")
print("1D well:  V < 0 inside |x| < 1, V > 0 outside, V(1) =",
      potential_1d(1.0))
print("3D well:  V > 0 inside r < 1, V < 0 outside, V(1) =",
      potential_3d(1.0))
print("Both media satisfy n^2 = 1 - V/E:",
      np.allclose(index_1d(xs) ** 2, 1.0 - potential_1d(xs), rtol=1e-13))

banner("1D wave: psi = C x sin(1/x)")
print("The wave oscillates ever faster toward x = 0, with nodes at 1/(k pi):")
for k in (1, 2, 3, 4):
    xk = 1.0 / (k * math.pi)
    print(f"  k = {k}: node at x = {xk:.6f},  psi = {psi_1d(xk):+.2e}")
print(f"Extremum scale: psi(2/pi) = {psi_1d(2.0 / math.pi):.8f} "
      f"(= 2/pi, since sin = 1 there)")
print(f"Continuous limit at the center: psi(0) = {psi_1d(0.0)}")

banner("Radial wave: Bessel J_{1/6} of argument r^3/3")
print(f"psi(0)     = {psi_3d(0.0):.12f}   (= 6^(-1/3), finite at the origin)")
for r in (0.5, 1.0, 2.0, 3.0, 4.0):
    print(f"psi({r:3.1f})   = {psi_3d(r):+.12f}")
print("""
Near the origin psi/psi(0) = 1 - r^6/42 + r^12/6552 - ...; far out the
envelope decays like r^-2.  The general solution adds a 1/r singular
partner:""")
r = 0.01
print(f"psi_general(r={r}, C1=1, C2=1) = {psi_3d_general(r, 1.0, 1.0):12.4f}"
      f"  ~  C1/r + C2 psi(0) = {1.0 / r + psi_3d(0.0):12.4f}")

banner("Dimensional bridge")
params = PhysicalParams(mass=1.0, energy=2.0, hbar=1.0)
lam = lambda_bar(params)
print(f"mass = 1, E = 2, hbar = 1  ->  de Broglie length lambda = {lam:.6f}")
coords = to_scaled(1.0, params)
print(f"lab x = 1.0 maps to (zeta, sqrtE) = ({coords.zeta:.4f}, "
      f"{coords.sqrtE:.4f}), product {coords.product:.4f} = x / lambda")
same = ScaledCoords(zeta=coords.zeta, sqrtE=coords.sqrtE).product
print(f"the waves depend on the product only: psi_1d(x/lambda) = "
      f"{psi_1d(same):.8f}")

banner("MediumSpec: one handle for everything")
spec = MediumSpec(kind=Geometry.THREE_D)
print(f"spec.index(1.5)     = {spec.index(1.5)}")
print(f"spec.action(1.5)    = {spec.action(1.5):.6f}")
print(f"spec.potential(1.5) = {spec.potential(1.5):.6f}")
print(f"spec.psi(1.5)       = {spec.psi(1.5):.8f}")
print(f"momentum profile derivatives at 1.5: "
      f"p' = {spec.momentum_profile().d1(1.5)}, "
      f"p'' = {spec.momentum_profile().d2(1.5)}")
