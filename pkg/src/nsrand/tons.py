"""Multi-round guessing probability under time-ordered causal constraints.

Builds the LP for an adversary guessing Alice's full output string over n
sequential rounds, where each conditional device behavior satisfies either
the time-ordered (TONS) or the block (ABNS) no-signalling constraint
family.  Strings are flattened round-major; the adversary holds one
subnormalized block per candidate output string, and by default the sum
of the blocks is pinned to a given n-round marginal behavior.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import lp as L
from .games import (Behavior, Game, GameError, encode_string,
                    game_value_coefficients)
from .nsvalues import _solve_certified

Number = Union[Fraction, float]

TONS = "tons"
ABNS = "abns"

FIXED_MARGINAL = "fixed-marginal"
PER_ROUND_VALUE = "per-round-value"

EXACT_ROUND_CAP = 3
FLOAT_ROUND_CAP = 4


@dataclass(frozen=True)
class CausalScenario:
    """Causal constraint family, round count, and single-round alphabets."""

    kind: str
    rounds: int
    alice_outputs: int = 2
    bob_outputs: int = 2
    alice_inputs: int = 2
    bob_inputs: int = 2

    def __post_init__(self):
        if self.kind not in (TONS, ABNS):
            raise GameError(f"unknown causal scenario kind {self.kind!r}")
        if self.rounds < 1:
            raise GameError("need at least one round")

    @classmethod
    def for_game(cls, kind: str, rounds: int, game: Game) -> "CausalScenario":
        if game.parties != 2:
            raise GameError("causal scenarios extend bipartite games")
        (nx, ny), (na, nb) = game.input_sizes, game.output_sizes
        return cls(kind, rounds, na, nb, nx, ny)

    @property
    def string_sizes(self) -> tuple[int, int, int, int]:
        n = self.rounds
        return (self.alice_outputs ** n, self.bob_outputs ** n,
                self.alice_inputs ** n, self.bob_inputs ** n)


def build_causal_constraints(scenario: CausalScenario) -> list[dict]:
    """Homogeneous equality rows of the scenario over one behavior block.

    Rows are dicts mapping (A, B, X, Y) string keys to +-1 coefficients;
    each row states that a partial sum with a given suffix of one party's
    inputs equals the same sum with the all-zero reference suffix.  TONS
    emits both directions of every prefix level i in 0..n-1; ABNS only the
    full-block level i = 0.
    """
    n = scenario.rounds
    na, nb, nx, ny = (scenario.alice_outputs, scenario.bob_outputs,
                      scenario.alice_inputs, scenario.bob_inputs)
    levels = range(n) if scenario.kind == TONS else (0,)
    rows: list[dict] = []

    def emit(i: int, out_base: int, in_base: int, other_out_base: int,
             other_in_base: int, bob_side: bool):
        # One party's outputs past round i are summed out; the resulting
        # partial sum must not depend on that party's inputs past round i.
        # Kept coordinates: the first i rounds of the summed party, plus
        # the other party's full strings.
        ref_suffix = (0,) * (n - i)
        for other_out in range(other_out_base ** n):
            for other_in in range(other_in_base ** n):
                for keep in itertools.product(range(out_base), repeat=i):
                    for in_keep in itertools.product(range(in_base), repeat=i):
                        for suffix in itertools.product(range(in_base),
                                                        repeat=n - i):
                            if suffix == ref_suffix:
                                continue
                            coeffs: dict = {}
                            for tail in itertools.product(range(out_base),
                                                          repeat=n - i):
                                out_enc = encode_string(keep + tail, out_base)
                                for sgn, in_tail in ((1, suffix),
                                                     (-1, ref_suffix)):
                                    in_enc = encode_string(in_keep + in_tail,
                                                           in_base)
                                    if bob_side:
                                        key = (other_out, out_enc,
                                               other_in, in_enc)
                                    else:
                                        key = (out_enc, other_out,
                                               in_enc, other_in)
                                    coeffs[key] = coeffs.get(key, 0) + sgn
                            rows.append(coeffs)

    for i in levels:
        emit(i, nb, ny, na, nx, bob_side=True)   # future b free of future y
        emit(i, na, nx, nb, ny, bob_side=False)  # future a free of future x
    return rows


def causal_constraint_count(scenario: CausalScenario) -> int:
    """Closed-form row count of build_causal_constraints."""
    n = scenario.rounds
    na, nb, nx, ny = (scenario.alice_outputs, scenario.bob_outputs,
                      scenario.alice_inputs, scenario.bob_inputs)
    levels = range(n) if scenario.kind == TONS else (0,)
    total = 0
    for i in levels:
        total += (na ** n) * (nb ** i) * (nx ** n) * (ny ** i) * (ny ** (n - i) - 1)
        total += (nb ** n) * (na ** i) * (ny ** n) * (nx ** i) * (nx ** (n - i) - 1)
    return total


def satisfies_causal_constraints(behavior: Behavior,
                                 scenario: CausalScenario) -> bool:
    """Evaluate the scenario's equality rows directly on a behavior."""
    for row in build_causal_constraints(scenario):
        total = Fraction(0)
        for (A, B, X, Y), c in row.items():
            total += c * behavior.entry((A, B), (X, Y))
        if total != 0:
            return False
    return True


@dataclass
class TonsLp:
    """Assembled guessing LP with its variable index map."""

    program: L.LinProgram
    var: dict
    scenario: CausalScenario
    num_causal_rows: int
    num_marginal_rows: int


def _check_caps(scenario: CausalScenario, mode: str,
                exact_round_cap: int, float_round_cap: int) -> None:
    cap = exact_round_cap if mode == "exact" else float_round_cap
    if scenario.rounds > cap:
        sa, sb, sx, sy = scenario.string_sizes
        raise L.LpSizeError(
            f"{scenario.kind} at n={scenario.rounds} needs "
            f"{sa * (sa * sb * sx * sy)} variables "
            f"({sa} blocks x {sa * sb * sx * sy} entries); the default cap is "
            f"n <= {cap} in {mode} mode")


def build_guessing_lp(game: Game, marginal: Optional[Behavior],
                      x_star: Sequence[int], scenario: CausalScenario,
                      y_ref: Optional[Sequence[int]] = None,
                      constraint_mode: str = FIXED_MARGINAL,
                      omega_star=None) -> TonsLp:
    """Assemble the multi-round guessing LP.

    In fixed-marginal mode the blocks must sum to ``marginal`` exactly; in
    the experimental per-round-value mode they must instead reproduce game
    value ``omega_star`` in every round conditioned on each past-input
    history (averaged over past outputs).
    """
    n = scenario.rounds
    na, nb, nx, ny = (scenario.alice_outputs, scenario.bob_outputs,
                      scenario.alice_inputs, scenario.bob_inputs)
    SA, SB, SX, SY = scenario.string_sizes
    if len(x_star) != n or any(not 0 <= x < nx for x in x_star):
        raise GameError(f"x_star must be {n} symbols below {nx}")
    x_enc = encode_string(list(x_star), nx)
    y_enc = 0 if y_ref is None else encode_string(list(y_ref), ny)

    var = {}
    for e in range(SA):
        for X in range(SX):
            for Y in range(SY):
                for A in range(SA):
                    for B in range(SB):
                        var[(e, A, B, X, Y)] = len(var)

    objective = {var[(e, e, B, x_enc, y_enc)]: Fraction(1)
                 for e in range(SA) for B in range(SB)}
    prog = L.LinProgram(len(var), "max", objective)

    causal_rows = build_causal_constraints(scenario)
    for e in range(SA):
        for row in causal_rows:
            prog.add({var[(e,) + key]: Fraction(c) for key, c in row.items()},
                     "==", 0)
    num_causal = len(causal_rows) * SA

    num_marg = 0
    if constraint_mode == FIXED_MARGINAL:
        if marginal is None:
            raise GameError("fixed-marginal mode needs a marginal behavior")
        if marginal.output_sizes != (SA, SB) or marginal.input_sizes != (SX, SY):
            raise GameError("marginal shape does not match the scenario")
        for X in range(SX):
            for Y in range(SY):
                for A in range(SA):
                    for B in range(SB):
                        prog.add({var[(e, A, B, X, Y)]: 1 for e in range(SA)},
                                 "==", marginal.entry((A, B), (X, Y)))
                        num_marg += 1
    elif constraint_mode == PER_ROUND_VALUE:
        if omega_star is None:
            raise GameError("per-round-value mode needs omega_star")
        coeffs_value = game_value_coefficients(game)
        # Summed blocks form a normalized behavior.
        prog.add({var[(e, A, B, 0, 0)]: 1 for e in range(SA)
                  for A in range(SA) for B in range(SB)}, "==", 1)
        num_marg += 1
        for i in range(n):
            for x_past in itertools.product(range(nx), repeat=i):
                for y_past in itertools.product(range(ny), repeat=i):
                    row: dict[int, Fraction] = {}
                    for ((ai, bi), (xi, yi)), c in coeffs_value.items():
                        xs = list(x_past) + [xi] + [0] * (n - i - 1)
                        ys = list(y_past) + [yi] + [0] * (n - i - 1)
                        X = encode_string(xs, nx)
                        Y = encode_string(ys, ny)
                        for e in range(SA):
                            for A_str in itertools.product(range(na), repeat=n):
                                if A_str[i] != ai:
                                    continue
                                A = encode_string(A_str, na)
                                for B_str in itertools.product(range(nb),
                                                               repeat=n):
                                    if B_str[i] != bi:
                                        continue
                                    B = encode_string(B_str, nb)
                                    j = var[(e, A, B, X, Y)]
                                    row[j] = row.get(j, Fraction(0)) + c
                    prog.add(row, "==", Fraction(omega_star))
                    num_marg += 1
    else:
        raise GameError(f"unknown constraint mode {constraint_mode!r}")

    return TonsLp(prog, var, scenario, num_causal, num_marg)


def tons_guessing_probability(game: Game, marginal: Behavior,
                              x_star: Sequence[int], scenario: CausalScenario,
                              mode: str = "exact",
                              y_ref: Optional[Sequence[int]] = None,
                              constraint_mode: str = FIXED_MARGINAL,
                              omega_star=None,
                              exact_round_cap: int = EXACT_ROUND_CAP,
                              float_round_cap: int = FLOAT_ROUND_CAP) -> Number:
    """Eve's optimal probability of guessing Alice's full output string.

    Raises InfeasibleError when the marginal is not attainable within the
    causal set, and LpSizeError beyond the configured round caps.
    """
    _check_caps(scenario, mode, exact_round_cap, float_round_cap)
    built = build_guessing_lp(game, marginal, x_star, scenario, y_ref,
                              constraint_mode, omega_star)
    sol = _solve_certified(built.program, mode)
    return sol.value


def iid_guessing_baseline(game: Game, single_round_marginal: Behavior,
                          n: int, mode: str = "exact") -> Number:
    """The i.i.d. benchmark: (single-round guessing LP value) ** n."""
    scenario = CausalScenario.for_game(TONS, 1, game)
    single = tons_guessing_probability(game, single_round_marginal, (0,),
                                       scenario, mode=mode)
    return single ** n
