"""The Grassmann algebra on ``n`` generators over Q or GF(p).

Basis monomials ``e_S`` are indexed by bitmasks: bit ``i-1`` is set when ``e_i``
occurs.  A :class:`Multivector` is a sparse map from masks to nonzero scalars.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .fieldlin import (
    Q,
    DimensionMismatch,
    Field,
    FieldError,
    Subspace,
    check_generators,
    nullspace,
    rref,
    subspace_sum,
)


def grade(mask: int) -> int:
    return mask.bit_count()


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int) -> tuple:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def term_order(mask: int):
    return (mask.bit_count(), mask)


@functools.lru_cache(maxsize=1 << 20)
def blade_sign(a: int, b: int) -> int:
    """Sign of ``e_a ∧ e_b`` relative to ``e_{a|b}``; 0 when the masks overlap.

    Counts pairs ``(s, t)`` with ``s`` in ``a``, ``t`` in ``b`` and ``s > t``: for each
    bit of ``b``, the bits of ``a`` above it.
    """
    if a & b:
        return 0
    inversions = 0
    rest = b
    while rest:
        low = rest & -rest
        inversions += (a & ~((low << 1) - 1)).bit_count()
        rest ^= low
    return -1 if inversions & 1 else 1


class Multivector:
    """An element of the Grassmann algebra.  Immutable."""

    __slots__ = ("n", "field", "_terms")

    def __init__(self, n: int, terms: Mapping[int, object] | None = None, field: Field = Q):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"generator count must be a non-negative integer, got {n!r}")
        self.n = n
        self.field = field
        clean = {}
        if terms:
            top = 1 << n
            for m, c in terms.items():
                if not 0 <= m < top:
                    raise DimensionMismatch(f"mask {m:#b} does not fit in {n} generators")
                c = field(c)
                if c:
                    clean[m] = c
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, field: Field, terms: dict) -> Multivector:
        # trusted constructor: masks in range, values in field, no zeros
        obj = cls.__new__(cls)
        obj.n = n
        obj.field = field
        obj._terms = terms
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, n: int, field: Field = Q) -> Multivector:
        return cls._raw(n, field, {})

    @classmethod
    def scalar(cls, n: int, c=1, field: Field = Q) -> Multivector:
        return cls(n, {0: c}, field)

    @classmethod
    def monomial(cls, n: int, mask: int, c=1, field: Field = Q) -> Multivector:
        return cls(n, {mask: c}, field)

    @classmethod
    def gen(cls, n: int, i: int, field: Field = Q) -> Multivector:
        if not 1 <= i <= n:
            raise IndexError(f"generator e{i} out of range 1..{n}")
        return cls._raw(n, field, {1 << (i - 1): field.one})

    @classmethod
    def from_coords(cls, n: int, coords, field: Field = Q) -> Multivector:
        if isinstance(coords, Mapping):
            return cls(n, coords, field)
        if len(coords) != 1 << n:
            raise DimensionMismatch(f"expected {1 << n} coordinates, got {len(coords)}")
        return cls(n, dict(enumerate(coords)), field)

    # -- views --------------------------------------------------------------
    @property
    def terms(self) -> Mapping[int, object]:
        return MappingProxyType(self._terms)

    def items(self) -> list:
        """Terms ordered by grade, then mask."""
        return sorted(self._terms.items(), key=lambda kv: term_order(kv[0]))

    def coeff(self, mask: int):
        return self._terms.get(mask, self.field.zero)

    def coords(self) -> dict:
        """Sparse coordinate vector (mask -> scalar), suitable for subspace membership."""
        return dict(self._terms)

    def dense(self) -> tuple:
        zero = self.field.zero
        return tuple(self._terms.get(m, zero) for m in range(1 << self.n))

    def grades(self) -> set:
        return {grade(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: Multivector) -> None:
        if other.n != self.n:
            raise DimensionMismatch(f"generator-count mismatch: {self.n} vs {other.n}")
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")

    def _lift(self, other) -> Multivector | None:
        if isinstance(other, Multivector):
            self._check(other)
            return other
        try:
            return Multivector(self.n, {0: other}, self.field)
        except (TypeError, FieldError):
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            t = out.get(m)
            if t is None:
                out[m] = c
            else:
                t = t + c
                if t:
                    out[m] = t
                else:
                    del out[m]
        return Multivector._raw(self.n, self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector._raw(self.n, self.field, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Multivector:
        c = self.field(c)
        if not c:
            return Multivector._raw(self.n, self.field, {})
        return Multivector._raw(self.n, self.field, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return wedge(self, other)
        try:
            return self.scale(other)
        except (TypeError, FieldError, ValueError):
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except (TypeError, FieldError, ValueError):
            return NotImplemented

    def __xor__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return wedge(self, other)

    def __pow__(self, k: int):
        out = Multivector.scalar(self.n, 1, self.field)
        for _ in range(k):
            out = wedge(out, self)
        return out

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.n == other.n and self.field == other.field and self._terms == other._terms
        if isinstance(other, int):
            return self == Multivector(self.n, {0: other}, self.field)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __len__(self):
        return len(self._terms)

    def __repr__(self):
        return f"Multivector(n={self.n}, {self})"

    def __str__(self):
        from .expr import format_multivector

        return format_multivector(self)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def wedge(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    out: dict = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            if ma & mb:
                continue
            s = blade_sign(ma, mb)
            m = ma | mb
            v = ca * cb if s > 0 else -(ca * cb)
            t = out.get(m)
            out[m] = v if t is None else t + v
    return Multivector._raw(a.n, a.field, {m: c for m, c in out.items() if c})


def lincomb(pairs: Iterable[tuple], n: int | None = None, field: Field | None = None) -> Multivector:
    """Exact linear combination ``sum c * a`` of ``(c, a)`` pairs."""
    pairs = list(pairs)
    if not pairs:
        if n is None:
            raise ValueError("empty linear combination needs an explicit n")
        return Multivector.zero(n, field or Q)
    first = pairs[0][1]
    out = Multivector.zero(first.n if n is None else n, first.field if field is None else field)
    for c, a in pairs:
        out._check(a)
        out = out + a.scale(c)
    return out


def grade_project(a: Multivector, i: int) -> Multivector:
    if not 0 <= i <= a.n:
        raise ValueError(f"grade {i} outside 0..{a.n}")
    return Multivector._raw(a.n, a.field, {m: c for m, c in a._terms.items() if grade(m) == i})


def parity_part(a: Multivector, parity: str) -> Multivector:
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    want = 0 if parity == "even" else 1
    return Multivector._raw(a.n, a.field, {m: c for m, c in a._terms.items() if grade(m) % 2 == want})


def is_odd(a: Multivector) -> bool:
    return all(grade(m) % 2 == 1 for m in a._terms)


def is_even(a: Multivector) -> bool:
    return all(grade(m) % 2 == 0 for m in a._terms)


def support(a: Multivector) -> set:
    """Generator indices occurring in some term of ``a``."""
    m = 0
    for k in a._terms:
        m |= k
    return set(indices_of(m))


def irr(a: Multivector) -> int:
    """Number of irreducible summands; a nonzero scalar part counts once."""
    return len(a._terms)


def irr_decomposition(a: Multivector, i: int) -> list:
    """Irreducible summands of the grade-``i`` component, by increasing mask."""
    part = grade_project(a, i)
    return [Multivector._raw(a.n, a.field, {m: c}) for m, c in sorted(part._terms.items())]


def commutator(a: Multivector, b: Multivector) -> Multivector:
    return wedge(a, b) - wedge(b, a)


def monomial_commutator(s: int, t: int) -> int:
    """Integer coefficient of ``e_{s|t}`` in ``[e_s, e_t]``."""
    return blade_sign(s, t) - blade_sign(t, s)


# ---------------------------------------------------------------------------
# distinguished subspaces
# ---------------------------------------------------------------------------

def grade_space(n: int, grades: Iterable[int], field: Field = Q) -> Subspace:
    """Direct sum of the full graded components E_i for ``i`` in ``grades``."""
    check_generators(n)
    gs = set(grades)
    return Subspace.from_masks(n, (m for m in range(1 << n) if grade(m) in gs), field)


def even_subspace(n: int, field: Field = Q) -> Subspace:
    return grade_space(n, range(0, n + 1, 2), field)


def odd_subspace(n: int, field: Field = Q) -> Subspace:
    return grade_space(n, range(1, n + 1, 2), field)


def span(elements: Iterable[Multivector], n: int, field: Field = Q) -> Subspace:
    return rref([a.coords() for a in elements], n, field)


def elements_of(B: Subspace) -> list:
    """Basis of ``B`` as multivectors."""
    return [Multivector._raw(B.n, B.field, dict(r)) for r in B.rows]


def center_of(n: int, method: str = "formula", field: Field = Q) -> Subspace:
    """Center of the algebra.

    ``formula`` spans the even-grade monomials and the top monomial.  ``bruteforce``
    solves ``[x, e_T] = 0`` for every basis monomial ``e_T`` as a linear system in
    the ``2**n`` coordinates of ``x``.
    """
    check_generators(n)
    if n < 1:
        raise ValueError("center_of needs n >= 1")
    top = (1 << n) - 1
    if method == "formula":
        return Subspace.from_masks(n, [m for m in range(top + 1) if grade(m) % 2 == 0 or m == top], field)
    if method != "bruteforce":
        raise ValueError(f"unknown method {method!r}")
    equations: dict = {}
    for t in range(top + 1):
        for s in range(top + 1):
            c = monomial_commutator(s, t)
            if c:
                equations.setdefault((t, s | t), {})[s] = c
    kernel = nullspace(list(equations.values()), top + 1, field)
    return rref(kernel, n, field)


def commutator_subalgebra(n: int, field: Field = Q) -> Subspace:
    """Unital subalgebra generated by all commutators ``[e_S, e_T]``."""
    check_generators(n)
    if n < 1:
        raise ValueError("commutator_subalgebra needs n >= 1")
    size = 1 << n
    gens = []
    for s in range(size):
        for t in range(s + 1, size):
            c = monomial_commutator(s, t)
            if c:
                gens.append({s | t: c})
    G = rref(gens, n, field)
    current = subspace_sum(Subspace.from_masks(n, [0], field), G)
    g_elems = elements_of(G)
    for _ in range(n + 1):
        products = [wedge(u, v).coords() for u in elements_of(current) for v in g_elems]
        grown = subspace_sum(current, rref(products, n, field))
        if grown == current:
            return current
        current = grown
    return current


@dataclass(frozen=True)
class GradedProfile:
    """Which full graded components a subspace contains.

    ``grades`` lists ``i >= 1`` with ``E_i ⊆ B``; ``exact`` says ``B`` is exactly the
    sum of those components (plus ``E_0`` when ``contains_unit``).
    """

    n: int
    contains_unit: bool
    grades: frozenset
    exact: bool

    def grade_set(self) -> frozenset:
        """All grades including 0 when the unit is contained."""
        return self.grades | ({0} if self.contains_unit else set())
