from __future__ import annotations

import random

import pytest

from grassmann_aut import classify, oracle
from grassmann_aut.fieldlin import GF, Q
from grassmann_aut.grassmann import grade_space
from grassmann_aut.morphism import factor_n1_f0, is_automorphism, random_automorphism


def test_gaussian_binomials():
    assert [oracle.gaussian_binomial(4, k, 3) for k in range(5)] == [1, 40, 130, 40, 1]
    assert oracle.count_subspaces(4, 3) == 212
    assert oracle.count_subspaces(2, 3) == 6
    assert oracle.gaussian_binomial(3, 5, 3) == 0


@pytest.mark.parametrize("n,p", [(1, 3), (1, 5), (2, 3)])
def test_subspace_enumeration_matches_count(n, p):
    subs = list(oracle.enumerate_subspaces(n, p))
    assert len(subs) == oracle.count_subspaces(1 << n, p)
    assert len(set(subs)) == len(subs)


def test_automorphism_counts():
    # n=1: e1 -> c*e1 with c != 0.  n=2: invertible linear part times a free e{1,2} term per image.
    assert len(oracle.enumerate_automorphisms(1, 3)) == 2
    assert len(oracle.enumerate_automorphisms(1, 5)) == 4
    autos = oracle.enumerate_automorphisms(2, 3)
    assert len(autos) == 48 * 9
    assert all(is_automorphism(a) for a in autos)
    assert len(set(autos)) == len(autos)


def test_budget():
    with pytest.raises(oracle.BudgetExceeded):
        oracle.enumerate_automorphisms(3, 3)
    with pytest.raises(oracle.BudgetExceeded):
        list(oracle.enumerate_subspaces(3, 3))


@pytest.mark.parametrize("n,p", [(1, 3), (1, 5), (2, 3)])
def test_exhaustive_agrees_with_classification(n, p):
    truth = oracle.exhaustive_stable_set(n, p)
    theory = {B for _, B in classify.enumerate_stable_subspaces(n, GF(p))}
    assert set(truth) == theory
    rng = random.Random(5)
    for B in truth:
        for _ in range(50):
            sigma = random_automorphism(n, field=GF(p), rng=rng)
            assert classify.find_witness(B, [sigma]) is None


def test_exhaustive_automorphisms_factor():
    for m in oracle.enumerate_automorphisms(2, 3):
        assert factor_n1_f0(m).recompose() == m


def test_randomized_stability_examples():
    B = grade_space(4, [2, 4])
    rep = oracle.randomized_stability(B, trials=500, seed=1)
    assert not rep.violated and rep.format().endswith("no violation found")
    rep = oracle.randomized_stability(grade_space(2, [1]), trials=3, seed=1)
    assert rep.violated and rep.source == "witness family"
    assert "inner(" in rep.format()
    assert oracle.randomized_stability(grade_space(3, [1]), 20, 7).format() == \
        oracle.randomized_stability(grade_space(3, [1]), 20, 7).format()


def test_graded_sums_count():
    assert len(oracle.graded_sums(3)) == 16
    assert len(set(oracle.graded_sums(3))) == 16


def test_cross_validate_exhaustive_n2():
    rep = oracle.cross_validate(2, GF(3), "exhaustive", seed=3, trials=50)
    assert rep.passed
    assert rep.lines[0].startswith("CHECK exhaustive-stable-set n=2 field=GF(3) seed=3 -> PASS")


def test_cross_validate_needs_finite_field_for_exhaustive():
    with pytest.raises(ValueError):
        oracle.cross_validate(2, Q, "exhaustive")


def test_cross_validate_is_deterministic():
    a = oracle.cross_validate(3, Q, seed=42, trials=30).text()
    b = oracle.cross_validate(3, Q, seed=42, trials=30).text()
    assert a == b
    assert "-> FAIL" not in a
    checks = [line.split()[1] for line in a.splitlines() if line.startswith("CHECK")]
    assert checks == ["center", "commutator-subalgebra", "double-commutator", "exp-inner", "factorization",
                      "enumeration-soundness", "graded-completeness", "closure-rules", "subalgebra-closure"]


def test_cross_validate_n5_rational():
    assert oracle.cross_validate(5, Q, seed=42).passed


def test_cross_validate_n9_probe():
    rep = oracle.cross_validate(9, Q, seed=42)
    assert rep.passed
    assert any(line.startswith("DISCREPANCY n=9 form=SubalgB(j=3,S={3,7},i=4)") for line in rep.lines)
