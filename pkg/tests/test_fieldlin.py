from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grassmann_aut.fieldlin import (
    GF,
    Q,
    CharacteristicTwoError,
    DimensionMismatch,
    FieldError,
    Residue,
    Subspace,
    check_generators,
    nullspace,
    parse_field,
    rank,
    rref,
    solve,
    subspace_intersect,
    subspace_sum,
)


def test_residue_arithmetic():
    a, b = Residue(2, 5), Residue(4, 5)
    assert a + b == 1
    assert a * b == 3
    assert a / b == 3          # 2 * 4^-1 = 2 * 4 = 8 = 3
    assert -a == 3
    assert a.inverse() * a == 1
    assert a ** 4 == 1


def test_residue_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        Residue(0, 7).inverse()


def test_parse_field_variants():
    assert parse_field("Q") is Q
    assert parse_field("GF(7)") == GF(7)
    assert parse_field("GF:7") == GF(7)
    with pytest.raises(CharacteristicTwoError):
        parse_field("GF:2")
    with pytest.raises(FieldError):
        GF(9)
    with pytest.raises(FieldError):
        parse_field("R")


def test_generator_cap():
    assert check_generators(16) == 16
    with pytest.raises(ValueError):
        check_generators(17)
    with pytest.raises(ValueError):
        check_generators(-1)


def test_rref_is_canonical():
    A = rref([{0: 2, 1: 2}, {1: 1, 2: 1}], 2)
    B = rref([{0: 1, 2: -1}, {0: 1, 1: 1}, {0: 3, 1: 4, 2: 1}], 2)
    assert A == B
    assert A.dim == 2
    assert A.pivots == (0, 1)
    assert A.basis[0] == (1, 0, -1, 0)


def test_rref_rejects_wrong_width():
    with pytest.raises(DimensionMismatch):
        rref([(1, 2, 3)], 2)


def test_sum_and_intersection():
    n = 2
    A = Subspace.from_masks(n, [0, 1])
    B = rref([{1: 1, 2: 1}, {3: 1}], n)
    assert (A + B).dim == 4
    meet = subspace_intersect(A, rref([{0: 1, 1: 1}, {2: 1}], n))
    assert meet == rref([{0: 1, 1: 1}], n)
    assert subspace_sum(A, A) == A
    assert Subspace.zero(n) <= A < Subspace.full(n)


def test_solve_and_nullspace():
    eqs = [{0: 1, 1: 1}, {1: 1, 2: -1}]
    x = solve(eqs, [3, 1], 3)
    assert x[0] + x[1] == 3 and x[1] - x[2] == 1
    assert solve([{0: 1}, {0: 1}], [1, 2], 1) is None
    ker = nullspace(eqs, 3)
    assert len(ker) == 1
    v = ker[0]
    assert v.get(0, 0) + v.get(1, 0) == 0
    assert rank(eqs) == 2


def test_prime_field_arithmetic_in_rref():
    F = GF(3)
    A = rref([{0: 1, 1: 2}, {0: 2, 1: 1}], 1, F)   # second row is 2*first mod 3
    assert A.dim == 1


rows = st.lists(st.dictionaries(st.integers(0, 7), st.integers(-3, 3), max_size=4), max_size=5)


@settings(max_examples=60, deadline=None)
@given(rows, rows)
def test_dimension_formula(r1, r2):
    A, B = rref(r1, 3), rref(r2, 3)
    assert (A + B).dim + (A & B).dim == A.dim + B.dim
    assert A & B <= A and A <= A + B


@settings(max_examples=60, deadline=None)
@given(rows)
def test_rows_reduce_to_zero(r):
    A = rref(r, 3)
    for v in r:
        assert A.reduce({k: Fraction(c) for k, c in v.items() if c}) == {}
    assert rref([dict(row) for row in A.rows], 3) == A
