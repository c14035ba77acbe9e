"""Certificates that the compensating media are exactly classical.

The quantum correction functional is evaluated on the media's momentum
profiles (it vanishes to machine precision) and on perturbed profiles
(it does not), then the log-momentum equation is solved as an IVP and
compared against its closed-form solutions.

Run:  python3 demos/classicality_certificates.py
"""
import numpy as np

from compmedia.fields import Geometry, SmoothFunction
from compmedia.media import (
    compensating_log_momentum_1d,
    compensating_log_momentum_3d,
    compensating_momentum_1d,
    compensating_momentum_3d,
)
from compmedia.quantumhj import (
    QBlowupError,
    q_residual,
    quantum_correction_1d,
    quantum_correction_3d,
    solve_q_ivp,
)


def banner(title):
    print()
    print("=" * 72)
    print(title)
    print("=" * 72)


banner("Quantum corrections on the compensating profiles")
xs = np.linspace(0.2, 10.0, 200)
p1 = compensating_momentum_1d()
c1 = max(abs(quantum_correction_1d(p1, float(x))) for x in xs)
p3 = compensating_momentum_3d()
c3a = max(abs(quantum_correction_3d(p3, float(r), form="amplitude")) for r in xs)
c3l = max(abs(quantum_correction_3d(p3, float(r), form="log")) for r in xs)
print(f"1D, p = 1/x^2:            max |correction| = {c1:.2e}")
print(f"3D, p = r^2 (amplitude):  max |correction| = {c3a:.2e}")
print(f"3D, p = r^2 (log form):   max |correction| = {c3l:.2e}")
print("-> the eikonal wave is exact in both media.")

banner("The same functional does NOT vanish for generic profiles")
p_inv = SmoothFunction(lambda x: 1.0 / x, lambda x: -1.0 / x ** 2,
                       lambda x: 2.0 / x ** 3)
p_lin = SmoothFunction(lambda r: r, lambda r: 1.0, lambda r: 0.0)
print(f"{'x':>5} {'1D corr for p=1/x':>20} {'3D corr for p=r':>20}")
for x in (0.5, 1.0, 2.0, 4.0):
    print(f"{x:5.1f} {quantum_correction_1d(p_inv, x):20.6f}"
          f" {quantum_correction_3d(p_lin, x):20.6f}")
print("(both equal -1/(4 x^2): the quantum term bends these media)")

banner("Log-momentum equation Q'' (+ 2Q'/r) = Q'^2 / 2")
q1 = compensating_log_momentum_1d()
q3 = compensating_log_momentum_3d()
r1 = np.max(np.abs(q_residual(Geometry.ONE_D, q1, xs)))
r3 = np.max(np.abs(q_residual(Geometry.THREE_D, q3, xs)))
print(f"residual of Q = -2 ln|x|: {r1:.2e}")
print(f"residual of Q = 2 ln r:   {r3:.2e}")

banner("Solving the Q-equation from initial data alone")
lm = solve_q_ivp(Geometry.ONE_D, qprime0=-2.0, span=(0.5, 3.0))
dev = np.max(np.abs(lm.values - (-2.0 * np.log(lm.grid))))
print(f"1D, Q'(1) = -2 on [0.5, 3]: max |Q - (-2 ln x)| = {dev:.2e}")
lm = solve_q_ivp(Geometry.THREE_D, qprime0=2.0, span=(0.5, 3.0))
dev = np.max(np.abs(lm.values - 2.0 * np.log(lm.grid)))
print(f"3D, Q'(1) = +2 on [0.5, 3]: max |Q - 2 ln r|    = {dev:.2e}")

print("""
Other slopes select other members of the 1D solution family
Q = -2 ln(x - a) + b, whose pole sits at a = x0 + 2/Q'(x0):""")
lm = solve_q_ivp(Geometry.ONE_D, qprime0=-1.0, span=(0.5, 3.0))
exact = -2.0 * np.log((lm.grid + 1.0) / 2.0)
print(f"Q'(1) = -1  ->  Q = -2 ln((x+1)/2), max dev "
      f"{np.max(np.abs(lm.values - exact)):.2e} (pole at x = -1, harmless)")

try:
    solve_q_ivp(Geometry.ONE_D, qprime0=4.0, span=(1.0, 3.0))
except QBlowupError as exc:
    print(f"Q'(1) = +4  ->  pole at x = 1.5 inside the span; solver raises:")
    print(f"            QBlowupError: {exc}")
