"""Automorphism-stable subspaces and subalgebras of finite Grassmann algebras."""

from .fieldlin import GF, Q, Subspace, parse_field
from .grassmann import Multivector, center_of, commutator, commutator_subalgebra, wedge
from .morphism import AlgebraMap, factor_n1_f0, inner_automorphism, make_map, random_automorphism
from .classify import (
    decide_stable,
    enumerate_stable_subalgebras,
    enumerate_stable_subspaces,
    stable_hull,
)
from .expr import format_multivector, parse_expression

__all__ = [
    "GF", "Q", "Subspace", "parse_field",
    "Multivector", "center_of", "commutator", "commutator_subalgebra", "wedge",
    "AlgebraMap", "factor_n1_f0", "inner_automorphism", "make_map", "random_automorphism",
    "decide_stable", "enumerate_stable_subalgebras", "enumerate_stable_subspaces", "stable_hull",
    "format_multivector", "parse_expression",
]
