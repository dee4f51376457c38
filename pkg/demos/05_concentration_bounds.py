"""The exponential-decay bookkeeping behind randomness accumulation.

Evaluates every closed-form bound in the decay chain at honest parameter
choices: the abort probability, the conditional guessing bound, the
headline 24 exp(-delta^4 mu n), and the exact rational identity tying the
decay constant mu to the LP-derived sensitivity of the guessing game.
"""

import math

from nsrand import DecayParams, InfeasibleParamsError, mu_consistency_check, \
    tons_decay_report
from nsrand.bounds import CHAIN_QUANTUM_VALUE, MU_CHAIN

print("decay constant consistency, in exact rationals:")
check = mu_consistency_check()
print(f"  pi_min of the guessing game      : {check.pi_min}")
print(f"  alpha from the LP slope          : {check.alpha}")
print(f"  pi_min^2 / (alpha^2 * 6^7)       : {check.mu_from_formula}")
print(f"  expected 1/(6^9 * 5^2)           : {check.mu_expected}")
print(f"  consistent                       : {check.consistent}")

margin = CHAIN_QUANTUM_VALUE - 8 / 9
print(f"\nvalue budget above the guessing-game bound: {margin:.6f}")
print("splitting it between the abort test (kappa) and the repetition "
      "slack (delta):")
for n in (10 ** 6, 10 ** 10, 10 ** 14, 10 ** 15):
    params = DecayParams(n, margin / 2, margin / 2, 0.75)
    report = tons_decay_report(params)
    print(f"  n = 10^{int(math.log10(n)):>2}:  abort <= {report.abort_bound:.3e}   "
          f"headline <= {report.headline:.6g}   "
          f"rate {report.hmin_rate:+.3e} bits/round")

params = DecayParams(10 ** 6, margin / 2, margin / 2, 0.75)
report = tons_decay_report(params)
print(f"\nthe headline falls below 1 only past n = {report.useful_n_onset:.3e}")
print(f"(mu = {float(MU_CHAIN):.3e} makes the provable regime astronomical;")
print("the decay is real but the constants are honest, not flattering).")

print("\nparameters that overshoot the quantum value are refused:")
try:
    tons_decay_report(DecayParams.from_omega_star(1000, 0.97))
except InfeasibleParamsError as exc:
    print(f"  omega* = 0.97 -> {exc}")
