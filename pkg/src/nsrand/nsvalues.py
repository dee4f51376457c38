"""Single-round no-signalling quantities.

Exact LP values of games over the no-signalling polytope, the
epsilon-almost-no-signalling relaxation with its dual certificate, and
the single-round adversarial guessing probability obtained from convex
decompositions into subnormalized no-signalling blocks (one block per
guess of the adversary).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import lp as L
from .games import (Game, GameError, chain_i3_coefficients,
                    game_value_coefficients, make_chain_game)

Number = Union[Fraction, float]

EQ_RELATION = "=="
GE_RELATION = ">="


class InfeasibleError(RuntimeError):
    """The requested constraint set admits no behavior."""


class UncertifiedError(RuntimeError):
    """Exact mode could not produce a verified optimality certificate."""


# Family tags of the six marginal constraint groups of a tripartite
# behavior: (parties summed out, input slots whose value is varied).
TRIPARTITE_FAMILIES = (
    ("A|x", (0,), (0,)),
    ("B|y", (1,), (1,)),
    ("E|z", (2,), (2,)),
    ("AB|xy", (0, 1), (0, 1)),
    ("AE|xz", (0, 2), (0, 2)),
    ("BE|yz", (1, 2), (1, 2)),
)
BIPARTITE_FAMILIES = (
    ("A|x", (0,), (0,)),
    ("B|y", (1,), (1,)),
)


def _axes(sizes: Sequence[int]):
    return [range(s) for s in sizes]


def _marginal_terms(out_sizes, summed, kept_outs, ins):
    """Variable keys of one marginal sum: fixed kept outputs, summed rest."""
    terms = []
    ranges = [range(out_sizes[p]) if p in summed else (kept_outs[p],)
              for p in range(len(out_sizes))]
    for outs in itertools.product(*ranges):
        terms.append((outs, ins))
    return terms


def _ns_equalities(out_sizes, in_sizes, families, var):
    """Reference-input equality rows expressing exact no-signalling."""
    rows = []
    nparties = len(out_sizes)
    for name, summed, varied in families:
        if len(summed) > 1:
            continue  # two-party families are implied at epsilon = 0
        kept = [p for p in range(nparties) if p not in summed]
        fixed_in = [p for p in range(nparties) if p not in varied]
        for kept_outs in itertools.product(*(range(out_sizes[p]) for p in kept)):
            full_kept = [0] * nparties
            for p, o in zip(kept, kept_outs):
                full_kept[p] = o
            for fixed_vals in itertools.product(*(range(in_sizes[p]) for p in fixed_in)):
                def build_ins(varied_vals):
                    ins = [0] * nparties
                    for p, v in zip(fixed_in, fixed_vals):
                        ins[p] = v
                    for p, v in zip(varied, varied_vals):
                        ins[p] = v
                    return tuple(ins)
                ref = build_ins(tuple(0 for _ in varied))
                for varied_vals in itertools.product(
                        *(range(in_sizes[p]) for p in varied)):
                    if all(v == 0 for v in varied_vals):
                        continue
                    other = build_ins(varied_vals)
                    coeffs: dict[int, Fraction] = {}
                    for key in _marginal_terms(out_sizes, summed, full_kept, other):
                        coeffs[var[key]] = coeffs.get(var[key], Fraction(0)) + 1
                    for key in _marginal_terms(out_sizes, summed, full_kept, ref):
                        coeffs[var[key]] = coeffs.get(var[key], Fraction(0)) - 1
                    rows.append(coeffs)
    return rows


def _behavior_lp(game: Game, objective_coeffs) -> tuple[L.LinProgram, dict]:
    """LP over the exact no-signalling polytope of the game's shape."""
    out_sizes, in_sizes = game.output_sizes, game.input_sizes
    var = {}
    for ins in itertools.product(*_axes(in_sizes)):
        for outs in itertools.product(*_axes(out_sizes)):
            var[(outs, ins)] = len(var)
    prog = L.LinProgram(len(var), "max",
                        {var[key]: Fraction(c)
                         for key, c in objective_coeffs.items()})
    for ins in itertools.product(*_axes(in_sizes)):
        prog.add({var[(outs, ins)]: 1
                  for outs in itertools.product(*_axes(out_sizes))}, "==", 1)
    families = TRIPARTITE_FAMILIES if game.parties == 3 else BIPARTITE_FAMILIES
    for coeffs in _ns_equalities(out_sizes, in_sizes, families, var):
        prog.add(coeffs, "==", 0)
    return prog, var


def _solve_certified(prog: L.LinProgram, mode: str,
                     float_tolerance: float = 1e-9) -> L.LpSolution:
    sol = L.solve(prog, mode=mode, float_tolerance=float_tolerance)
    if sol.status == L.LpSolution.INFEASIBLE:
        raise InfeasibleError("constraint set is infeasible")
    if sol.status != L.LpSolution.OPTIMAL:
        raise RuntimeError(f"unexpected LP status {sol.status}")
    if mode == "exact" and not sol.certified:
        raise UncertifiedError("no exact optimality certificate obtained")
    return sol


def ns_value(game: Game, mode: str = "exact") -> Number:
    """Exact optimum of the game value over no-signalling behaviors."""
    prog, _ = _behavior_lp(game, game_value_coefficients(game))
    return _solve_certified(prog, mode).value


@dataclass
class EpsNsReport:
    """Value of a game over epsilon-almost-no-signalling behaviors.

    ``normalization_duals`` carries one multiplier per input setting and
    ``tau_duals`` one nonnegative multiplier per relaxed marginal
    constraint, grouped by marginal family; together they form the dual
    certificate (dual objective = sum N + epsilon * sum tau).
    """

    epsilon: Fraction
    value: Number
    normalization_duals: dict
    tau_duals: dict
    solution: L.LpSolution


def eps_ns_value(game: Game, epsilon, mode: str = "exact") -> EpsNsReport:
    """Game value when every no-signalling equality is relaxed by epsilon.

    All marginal families of the tripartite definition (three single-party
    and three two-party groups) are relaxed with the same slack; ordered
    input pairs give one inequality per direction of each absolute value.
    """
    epsilon = Fraction(epsilon)
    if epsilon < 0:
        raise GameError("epsilon must be nonnegative")
    out_sizes, in_sizes = game.output_sizes, game.input_sizes
    nparties = game.parties
    var = {}
    for ins in itertools.product(*_axes(in_sizes)):
        for outs in itertools.product(*_axes(out_sizes)):
            var[(outs, ins)] = len(var)
    prog = L.LinProgram(len(var), "max",
                        {var[key]: Fraction(c)
                         for key, c in game_value_coefficients(game).items()})

    norm_rows = []
    for ins in itertools.product(*_axes(in_sizes)):
        norm_rows.append(ins)
        prog.add({var[(outs, ins)]: 1
                  for outs in itertools.product(*_axes(out_sizes))}, "==", 1)

    families = TRIPARTITE_FAMILIES if nparties == 3 else BIPARTITE_FAMILIES
    tau_rows = []  # (family, kept outs, from-inputs, to-inputs)
    for name, summed, varied in families:
        kept = [p for p in range(nparties) if p not in summed]
        fixed_in = [p for p in range(nparties) if p not in varied]
        for kept_outs in itertools.product(*(range(out_sizes[p]) for p in kept)):
            full_kept = [0] * nparties
            for p, o in zip(kept, kept_outs):
                full_kept[p] = o
            for fixed_vals in itertools.product(
                    *(range(in_sizes[p]) for p in fixed_in)):
                varied_space = list(itertools.product(
                    *(range(in_sizes[p]) for p in varied)))
                for va, vb in itertools.permutations(varied_space, 2):
                    def build_ins(vv):
                        ins = [0] * nparties
                        for p, v in zip(fixed_in, fixed_vals):
                            ins[p] = v
                        for p, v in zip(varied, vv):
                            ins[p] = v
                        return tuple(ins)
                    ia, ib = build_ins(va), build_ins(vb)
                    coeffs: dict[int, Fraction] = {}
                    for key in _marginal_terms(out_sizes, summed, full_kept, ia):
                        coeffs[var[key]] = coeffs.get(var[key], Fraction(0)) + 1
                    for key in _marginal_terms(out_sizes, summed, full_kept, ib):
                        coeffs[var[key]] = coeffs.get(var[key], Fraction(0)) - 1
                    prog.add(coeffs, "<=", epsilon)
                    tau_rows.append((name, tuple(kept_outs), ia, ib))

    sol = _solve_certified(prog, mode)
    n_norm = len(norm_rows)
    normalization = {ins: sol.dual[i] for i, ins in enumerate(norm_rows)}
    tau: dict = {}
    for offset, key in enumerate(tau_rows):
        family = key[0]
        tau.setdefault(family, {})[key[1:]] = sol.dual[n_norm + offset]
    return EpsNsReport(epsilon, sol.value, normalization, tau, sol)


class NonAffineSlopeError(RuntimeError):
    """Sampled epsilon values are not exactly affine; carries the segments."""

    def __init__(self, segments):
        super().__init__(f"piecewise structure detected: {segments}")
        self.segments = segments


def alpha_slope(game: Game, eps_grid: Sequence, mode: str = "exact") -> Fraction:
    """Slope of the epsilon-almost-no-signalling value on a sampled regime.

    Checks that the sampled values are exactly affine; a nonlinear regime
    raises NonAffineSlopeError whose ``segments`` attribute reports the
    piecewise structure instead of a single slope.
    """
    grid = sorted({Fraction(e) for e in eps_grid})
    if len(grid) < 2:
        raise GameError("need at least two distinct grid points")
    values = [eps_ns_value(game, e, mode=mode).value for e in grid]
    segments = []
    for (e0, v0), (e1, v1) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        segments.append((e0, e1, Fraction(v1 - v0) / (e1 - e0)))
    slopes = {s for _, _, s in segments}
    if len(slopes) != 1:
        raise NonAffineSlopeError(segments)
    return segments[0][2]


# ---------------------------------------------------------------------------
# single-round guessing probability
# ---------------------------------------------------------------------------

def _guessing_lp(game: Game, x_star: int, w_star, relation: str,
                 functional: Optional[dict], y_ref: int = 0
                 ) -> tuple[L.LinProgram, dict]:
    """Decomposition LP: one subnormalized no-signalling block per guess.

    The adversary's guess e ranges over Alice's output alphabet; the block
    masses P(e|z*) are absorbed into the subnormalized blocks, whose sum
    must be normalized and meet the value constraint.
    """
    if game.parties != 2:
        raise GameError("single-round guessing expects a bipartite game")
    na, nb = game.output_sizes
    nx, ny = game.input_sizes
    if not 0 <= x_star < nx:
        raise GameError(f"x_star {x_star} outside the input alphabet")
    coeffs_value = functional if functional is not None \
        else game_value_coefficients(game)

    var = {}
    for e in range(na):
        for x in range(nx):
            for y in range(ny):
                for a in range(na):
                    for b in range(nb):
                        var[(e, a, b, x, y)] = len(var)
    objective = {var[(e, e, b, x_star, y_ref)]: Fraction(1)
                 for e in range(na) for b in range(nb)}
    prog = L.LinProgram(len(var), "max", objective)

    # Per-block no-signalling (homogeneous, valid for subnormalized blocks).
    for e in range(na):
        for a in range(na):
            for x in range(nx):
                for y in range(1, ny):
                    coeffs = {}
                    for b in range(nb):
                        coeffs[var[(e, a, b, x, y)]] = Fraction(1)
                        coeffs[var[(e, a, b, x, 0)]] = \
                            coeffs.get(var[(e, a, b, x, 0)], Fraction(0)) - 1
                    prog.add(coeffs, "==", 0)
        for b in range(nb):
            for y in range(ny):
                for x in range(1, nx):
                    coeffs = {}
                    for a in range(na):
                        coeffs[var[(e, a, b, x, y)]] = Fraction(1)
                        coeffs[var[(e, a, b, 0, y)]] = \
                            coeffs.get(var[(e, a, b, 0, y)], Fraction(0)) - 1
                    prog.add(coeffs, "==", 0)

    # The summed decomposition is a normalized behavior.
    prog.add({var[(e, a, b, 0, 0)]: 1 for e in range(na)
              for a in range(na) for b in range(nb)}, "==", 1)

    # Observed value of the summed behavior.
    value_row: dict[int, Fraction] = {}
    for ((a, b), (x, y)), c in coeffs_value.items():
        for e in range(na):
            j = var[(e, a, b, x, y)]
            value_row[j] = value_row.get(j, Fraction(0)) + Fraction(c)
    prog.add(value_row, relation, Fraction(w_star))
    return prog, var


def single_round_guessing(game: Game, x_star: int, w_star,
                          relation: str = EQ_RELATION,
                          functional: Optional[dict] = None,
                          mode: str = "exact",
                          y_ref: int = 0,
                          with_solution: bool = False):
    """Adversarial guessing probability of Alice's output at ``x_star``.

    Maximizes the probability that the block label matches Alice's output
    over decompositions whose sum attains value ``w_star`` (with respect to
    the game value, or to an alternative linear ``functional`` such as the
    chained correlator expression) under the given relation.  The optimum
    does not depend on the reference input ``y_ref`` (no-signalling of the
    blocks); the parameter exists so that this can be asserted.
    """
    if relation not in (EQ_RELATION, GE_RELATION):
        raise GameError(f"relation must be '==' or '>=', got {relation!r}")
    prog, _ = _guessing_lp(game, x_star, w_star, relation, functional, y_ref)
    sol = _solve_certified(prog, mode)
    return (sol.value, sol, prog) if with_solution else sol.value


def chain_ns_guessing_curve(samples: Sequence, mode: str = "exact",
                            x_star: int = 0) -> list[tuple[Fraction, Number]]:
    """No-signalling guessing curve of the chained expression.

    For every sampled value w in [4, 6] the LP optimum is checked to equal
    2 - w/4 exactly before the (w, P_g) row is emitted.
    """
    game = make_chain_game()
    functional = chain_i3_coefficients()
    rows = []
    for w in samples:
        w = Fraction(w)
        if not 4 <= w <= 6:
            raise GameError(f"sample {w} outside [4, 6]")
        pg = single_round_guessing(game, x_star, w, EQ_RELATION,
                                   functional=functional, mode=mode)
        expected = 2 - w / 4
        if mode == "exact" and pg != expected:
            raise RuntimeError(
                f"LP value {pg} at w={w} deviates from the line {expected}")
        rows.append((w, pg))
    return rows
