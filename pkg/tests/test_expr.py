from __future__ import annotations

import pytest
from hypothesis import given, settings

from conftest import multivectors
from grassmann_aut.fieldlin import GF, Q
from grassmann_aut.grassmann import Multivector, mask_of
from grassmann_aut.expr import (
    ExpressionSyntaxError,
    GeneratorIndexError,
    LiteralDivisionByZero,
    SubspaceFileError,
    format_multivector,
    parse_expression,
    read_subspace,
    write_subspace,
)
from grassmann_aut.fieldlin import rref
from grassmann_aut.grassmann import grade_space

E = lambda n, *idx: Multivector.monomial(n, mask_of(idx))


def test_parse_examples():
    assert parse_expression("e2^e1", 2) == -E(2, 1, 2)
    assert parse_expression("[e1,e2]", 2) == E(2, 1, 2).scale(2)
    assert parse_expression("1/2*(e1+e2)^(e1-e2)", 2) == -E(2, 1, 2)
    assert parse_expression("e1^e2 + [e1,e3]", 3) == E(3, 1, 2) + E(3, 1, 3).scale(2)
    assert parse_expression("e{3,1}", 3) == -E(3, 1, 3)
    assert parse_expression("-e1 - -e1", 1) == Multivector.zero(1)
    assert parse_expression("2*3", 1) == Multivector.scalar(1, 6)


def test_wedge_binds_tighter_than_sum():
    assert parse_expression("e1 + e2 ^ e3", 3) == Multivector.gen(3, 1) + E(3, 2, 3)
    assert parse_expression("e1 - e2 - e3", 3) == Multivector(3, {1: 1, 2: -1, 4: -1})


def test_literals_in_prime_field():
    assert parse_expression("1/2", 1, GF(5)) == Multivector.scalar(1, 3, GF(5))
    with pytest.raises(LiteralDivisionByZero):
        parse_expression("1/3", 1, GF(3))
    with pytest.raises(LiteralDivisionByZero):
        parse_expression("1/0", 1)


@pytest.mark.parametrize("text", ["", "e1 +", "(e1", "[e1 e2]", "e1 $ e2", "e"])
def test_syntax_errors(text):
    with pytest.raises(ExpressionSyntaxError):
        parse_expression(text, 2)


def test_syntax_error_position():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("e1 + )", 2)
    assert info.value.position == 5


def test_generator_out_of_range():
    with pytest.raises(GeneratorIndexError):
        parse_expression("e3", 2)
    with pytest.raises(GeneratorIndexError):
        parse_expression("e0", 2)


def test_format_examples():
    assert format_multivector(Multivector.zero(2)) == "0"
    assert format_multivector(-E(2, 1, 2)) == "-e{1,2}"
    a = Multivector(3, {0: 1, 1: 2, 5: 1})
    assert format_multivector(a) == "1 + 2*e{1} + e{1,3}"
    assert format_multivector(Multivector(2, {2: -1, 3: "1/2"})) == "-e{2} + 1/2*e{1,2}"


@settings(max_examples=100, deadline=None)
@given(multivectors(6, Q, max_terms=8))
def test_round_trip_rational(a):
    assert parse_expression(format_multivector(a), 6) == a


@settings(max_examples=100, deadline=None)
@given(multivectors(5, GF(3), max_terms=8))
def test_round_trip_gf3(a):
    assert parse_expression(format_multivector(a), 5, GF(3)) == a


def test_subspace_file_round_trip():
    text = "n=3 field=Q\ne1 + e2\ne{1,2}\n\n2*e1 + 2*e2\n"
    B = read_subspace(text)
    assert B == rref([{1: 1, 2: 1}, {3: 1}], 3)
    assert read_subspace(write_subspace(B)) == B
    G = grade_space(2, [1], GF(3))
    out = write_subspace(G)
    assert out.startswith("n=2 field=GF(3)\n")
    assert read_subspace(out) == G


@pytest.mark.parametrize("text", ["", "n=3\ne1", "n=3 field=R\ne1", "n=2 field=GF(2)\ne1", "n=2 field=Q\ne5"])
def test_bad_subspace_files(text):
    with pytest.raises(SubspaceFileError):
        read_subspace(text)
