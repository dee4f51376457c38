"""How much can a no-signalling eavesdropper learn from one Bell round?

Walks through the single-round toolbox: exact no-signalling values of the
chained game and its tripartite guessing extension, the effect of letting
the boxes signal a little, and the dual certificate that proves each LP
optimum.
"""

from fractions import Fraction as F

from nsrand import (alpha_slope, eps_ns_value, make_chain_game,
                    make_guessing_game, ns_value)

chain = make_chain_game()
print("three-setting chained game (complete-support variant)")
print("  classical value : 8/9   (five equalities + one flip on a 6-cycle)")
print(f"  no-signalling   : {ns_value(chain)}   (a PR-type box wins every pair)")

guessing = make_guessing_game(chain)
print("\ntripartite guessing game: Eve must echo Alice whenever z = x")
value = ns_value(guessing)
print(f"  no-signalling value: {value}")
print("  the gap below 1 is monogamy of nonlocality: winning the chain")
print("  perfectly forces Alice's outputs to decorrelate from Eve.")

print("\nrelaxing every no-signalling equality by epsilon:")
for eps in (F(0), F(1, 40), F(1, 20), F(1, 10), F(1, 5)):
    report = eps_ns_value(guessing, eps)
    print(f"  eps = {str(eps):>5}  ->  value {report.value}")
print("the value climbs linearly at slope "
      f"{alpha_slope(guessing, [F(0), F(1, 40), F(1, 20)])} until it "
      "saturates at 1 (eps = 1/10).")

report = eps_ns_value(guessing, F(1, 20))
n_sum = sum(report.normalization_duals.values())
t_sum = sum(t for fam in report.tau_duals.values() for t in fam.values())
print("\ndual certificate of the eps = 1/20 optimum:")
print(f"  sum of normalization duals : {n_sum}")
print(f"  eps * sum of tau duals     : {F(1, 20) * t_sum}")
print(f"  total = optimum            : {n_sum + F(1, 20) * t_sum}")
print(f"  certificate verified       : {report.solution.certified}")
