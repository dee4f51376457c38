"""Unit tests for the exact LP engine."""

import random
from fractions import Fraction as F

import pytest

import nsrand.lp as L


def _solve(lp, mode="exact"):
    return L.solve(lp, mode=mode)


def test_single_variable_box():
    """max x s.t. x <= 3 has value 3 with a verified certificate."""
    lp = L.LinProgram(1, "max", {0: F(1)})
    lp.add({0: 1}, "<=", 3)
    sol = _solve(lp)
    assert sol.status == "optimal"
    assert sol.value == 3
    assert sol.certified
    assert L.verify_certificate(lp, sol)


def test_degenerate_optimum_terminates():
    """Bland's rule terminates on the degenerate max x+y s.t. x+y <= 1."""
    lp = L.LinProgram(2, "max", {0: F(1), 1: F(1)})
    lp.add({0: 1, 1: 1}, "<=", 1)
    sol = _solve(lp)
    assert sol.value == 1
    assert sol.certified


def test_infeasible_status():
    lp = L.LinProgram(1, "max", {0: F(1)})
    lp.add({0: 1}, ">=", 2)
    lp.add({0: 1}, "<=", 1)
    assert _solve(lp).status == "infeasible"


def test_unbounded_status():
    lp = L.LinProgram(1, "max", {0: F(1)})
    lp.add({0: 1}, ">=", 1)
    assert _solve(lp).status == "unbounded"


def test_min_sense_and_free_variable():
    """min y over y == -2 with y free reaches the negative value."""
    lp = L.LinProgram(1, "min", {0: F(1)}, lower={0: None})
    lp.add({0: 1}, "==", -2)
    sol = _solve(lp)
    assert sol.value == -2
    assert sol.certified


def test_upper_bound_normalization():
    lp = L.LinProgram(1, "max", {0: F(1)}, upper={0: F(5, 2)})
    sol = _solve(lp)
    assert sol.value == F(5, 2)
    assert len(sol.dual) == 1  # the desugared bound row


def test_certificate_rejects_perturbed_primal():
    """A 1e-6 perturbation of one primal entry breaks exact feasibility."""
    lp = L.LinProgram(2, "max", {0: F(2), 1: F(1)})
    lp.add({0: 1, 1: 1}, "==", 1)
    sol = _solve(lp)
    assert L.verify_certificate(lp, sol)
    sol.primal[0] += F(1, 10 ** 6)
    report = L.verify_certificate(lp, sol)
    assert not report
    assert report.reasons


def test_certificate_rejects_zeroed_dual():
    lp = L.LinProgram(1, "max", {0: F(1)})
    lp.add({0: 1}, "<=", 3)
    sol = _solve(lp)
    sol.dual = [F(0)]
    report = L.verify_certificate(lp, sol)
    assert not report
    assert any("gap" in r or "reduced" in r for r in report.reasons)


def test_deterministic_bit_for_bit():
    """Identical programs produce identical solutions."""
    def build():
        lp = L.LinProgram(3, "max", {0: F(1), 1: F(2), 2: F(3)})
        lp.add({0: 1, 1: 1}, "<=", F(3, 2))
        lp.add({1: 1, 2: 1}, "==", 1)
        lp.add({0: 1, 2: 1}, ">=", F(1, 3))
        return lp
    a = _solve(build())
    b = _solve(build())
    assert a.value == b.value
    assert a.primal == b.primal
    assert a.dual == b.dual


def test_float_mode_duality_gap_within_tolerance():
    lp = L.LinProgram(2, "max", {0: F(3), 1: F(2)})
    lp.add({0: 1, 1: 1}, "<=", 4)
    lp.add({0: 1, 1: 3}, "<=", 6)
    sol = _solve(lp, mode="float")
    assert sol.status == "optimal"
    primal = sum(float(c) * sol.primal[j] for j, c in lp.objective.items())
    dual = sum(sol.dual[k] * float(con.rhs)
               for k, con in enumerate(lp.constraints))
    assert abs(primal - dual) <= 1e-9
    assert L.verify_certificate(lp, sol)


def test_lift_path_matches_direct_simplex(monkeypatch):
    """The float-assisted exact path returns the same certified optimum."""
    def build():
        lp = L.LinProgram(3, "max", {0: F(1), 1: F(2), 2: F(1)})
        lp.add({0: 1, 1: 1}, "<=", F(3, 2))
        lp.add({1: 1, 2: 1}, "==", 1)
        lp.add({0: 1, 2: 1}, ">=", F(1, 3))
        return lp
    direct = _solve(build())
    monkeypatch.setattr(L, "EXACT_DIRECT_CELL_LIMIT", 0)
    lifted = _solve(build())
    assert lifted.certified
    assert lifted.value == direct.value == F(5, 2)


def test_random_cross_check_against_float_solver():
    """Exact simplex agrees with HiGHS in status and value on random LPs."""
    rng = random.Random(20240817)
    for _ in range(60):
        n = rng.randint(1, 4)
        lp = L.LinProgram(n, rng.choice(["max", "min"]),
                          {j: F(rng.randint(-3, 3)) for j in range(n)})
        for _ in range(rng.randint(1, 5)):
            lp.add({j: F(rng.randint(-2, 2)) for j in range(n)},
                   rng.choice(["<=", "==", ">="]), F(rng.randint(-2, 4)))
        for j in range(n):
            lp.add({j: 1}, "<=", 7)
        exact = _solve(lp)
        approx = _solve(lp, mode="float")
        assert exact.status == approx.status
        if exact.status == "optimal":
            assert exact.certified
            assert abs(float(exact.value) - approx.value) < 1e-7


def test_dump_format():
    lp = L.LinProgram(2, "max", {0: F(1, 3)})
    lp.add({0: 1, 1: -1}, ">=", F(2, 7))
    text = L.dump_lp(lp)
    assert "1/3*x0" in text
    assert ">= 2/7" in text
    assert "x1 >= 0" in text


def test_validate_rejects_bad_indices():
    lp = L.LinProgram(1, "max", {3: F(1)})
    with pytest.raises(L.LpError):
        lp.validate()
