from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import multivectors
from grassmann_aut.fieldlin import GF, Q
from grassmann_aut.grassmann import Multivector, mask_of, wedge
from grassmann_aut.morphism import (
    PROFILES,
    NonOddElement,
    NotAutomorphism,
    RelationViolation,
    ScalarPartPresent,
    WrongArity,
    ZeroScalar,
    apply,
    compose,
    cubic_shear,
    derivation_power,
    exp_inner,
    factor_n1_f0,
    identity,
    inner_automorphism,
    invert,
    is_automorphism,
    is_parity_preserving,
    make_map,
    random_automorphism,
    sign_flip,
    transposition,
)

E = lambda n, *idx: Multivector.monomial(n, mask_of(idx))
g = Multivector.gen


def test_make_map_examples():
    assert make_map([g(3, 1), g(3, 2), g(3, 3)]) == identity(3)
    assert make_map([g(3, 2), g(3, 1), g(3, 3)]) == transposition(3, 1, 2)
    with pytest.raises(ScalarPartPresent):
        make_map([g(2, 1) + 1, g(2, 2)])
    with pytest.raises(WrongArity):
        make_map([g(2, 1)], 2)
    with pytest.raises(RelationViolation):
        make_map([g(3, 1) + E(3, 2, 3), g(3, 2), g(3, 3)])   # square is 2*e{1,2,3}
    with pytest.raises(RelationViolation) as info:
        make_map([g(3, 1) + E(3, 1, 2), g(3, 2), g(3, 3) + E(3, 1, 3)])  # squares vanish, pairs do not
    assert info.value.i != info.value.j
    # zero-divisor images still satisfy the relations, so this is an endomorphism
    assert not is_automorphism(make_map([E(2, 1, 2), g(2, 2)]))


def test_witness_automorphisms():
    assert apply(sign_flip(2, {1}), g(2, 1)) == -g(2, 1)
    assert apply(sign_flip(2, {1}), g(2, 2)) == g(2, 2)
    assert apply(sign_flip(2, {1}), E(2, 1, 2)) == -E(2, 1, 2)
    assert apply(transposition(2, 1, 2), E(2, 1, 2)) == -E(2, 1, 2)
    assert apply(transposition(2, 1, 2), g(2, 1)) == g(2, 2)
    shear = cubic_shear(4, 2)
    assert shear.images[0] == g(4, 1) + E(4, 1, 3, 4)
    inv = invert(shear)
    assert inv.images[0] == g(4, 1) - E(4, 1, 3, 4)
    assert compose(shear, inv) == identity(4)
    with pytest.raises(IndexError):
        cubic_shear(3, 2)
    with pytest.raises(IndexError):
        transposition(2, 1, 3)


def test_odd_shear_is_an_automorphism():
    # j odd is allowed as well: the map is still invertible and respects the relations
    m = cubic_shear(3, 1)
    assert is_automorphism(m) and m.images[0] == g(3, 1) + E(3, 1, 2, 3)


def test_is_automorphism_rank():
    m = make_map([g(3, 1) + g(3, 2), g(3, 1) + g(3, 2), g(3, 3)])
    assert not is_automorphism(m)
    with pytest.raises(NotAutomorphism):
        factor_n1_f0(m)


def test_inner_automorphism_examples():
    assert inner_automorphism(Multivector.zero(2)) == identity(2)
    m = inner_automorphism(g(2, 1))
    assert apply(m, g(2, 2)) == g(2, 2) + E(2, 1, 2).scale(2)
    assert apply(m, g(2, 1)) == g(2, 1)
    assert is_automorphism(m) and not is_parity_preserving(m)
    with pytest.raises(NonOddElement):
        inner_automorphism(E(2, 1, 2))


def test_exp_inner_examples():
    a = g(3, 1) + E(3, 1, 2, 3)
    assert exp_inner(1, a) == inner_automorphism(a)
    assert exp_inner(7, Multivector.zero(3)) == identity(3)
    with pytest.raises(ZeroScalar):
        exp_inner(0, a)
    with pytest.raises(NonOddElement):
        exp_inner(1, Multivector.scalar(3, 1))


def test_parity_preservation():
    for m in (transposition(3, 1, 2), sign_flip(3, {2}), cubic_shear(3, 1), identity(3)):
        assert is_parity_preserving(m)


def test_factor_examples():
    swap = transposition(3, 1, 2)
    fac = factor_n1_f0(swap)
    assert not fac.a and fac.f == swap
    m = compose(inner_automorphism(g(3, 1)), swap)
    fac = factor_n1_f0(m)
    assert fac.f == swap and fac.recompose() == m
    assert (fac.a - g(3, 1)).grades() <= {3}     # determined up to the odd part of the center
    a = g(3, 1) + E(3, 1, 2, 3)
    fac = factor_n1_f0(inner_automorphism(a))
    assert fac.f == identity(3)
    assert (fac.a - a).grades() <= {3}


def test_random_automorphism_is_deterministic():
    for profile in PROFILES:
        assert random_automorphism(4, seed=9, profile=profile) == random_automorphism(4, seed=9, profile=profile)
    lin = random_automorphism(3, seed=1, profile="linear")
    assert all(im.grades() == {1} for im in lin.images)
    inn = random_automorphism(3, seed=1, profile="inner")
    assert factor_n1_f0(inn).f == identity(3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([Q, GF(3), GF(7)]), st.integers(2, 5))
def test_random_automorphisms_factor(seed, field, n):
    m = random_automorphism(n, seed=seed, field=field)
    assert is_automorphism(m)
    fac = factor_n1_f0(m)
    assert fac.recompose() == m and is_parity_preserving(fac.f)
    assert compose(m, invert(m)) == identity(n, field)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), multivectors(4), multivectors(4))
def test_maps_are_multiplicative(seed, x, y):
    m = random_automorphism(4, seed=seed)
    assert apply(m, wedge(x, y)) == wedge(apply(m, x), apply(m, y))
    assert apply(m, x + y) == apply(m, x) + apply(m, y)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), multivectors(5, GF(3)))
def test_inner_derivation_squares_to_zero(seed, x):
    from grassmann_aut.morphism import random_odd
    a = random_odd(5, random.Random(seed), GF(3))
    assert not derivation_power(a, x, 2)
