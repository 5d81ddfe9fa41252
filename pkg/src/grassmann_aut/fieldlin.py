"""Exact scalars over Q and GF(p), and canonical subspaces of the coordinate space of E.

A vector of the Grassmann algebra on ``n`` generators has ``2**n`` coordinates, one
per basis mask.  Subspaces are kept in reduced row-echelon form, which makes
equality a plain comparison of rows.

Rows are stored sparsely (``(column, value)`` pairs) because most subspaces that
occur in practice are spanned by basis monomials; :attr:`Subspace.basis` gives the
dense view.
"""

from __future__ import annotations

import functools
import random
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

#: Largest generator count accepted by subspace-level operations.
GENERATOR_CAP = 16


class FieldError(ValueError):
    pass


class CharacteristicTwoError(FieldError):
    """Raised when a field of characteristic 2 is requested."""


class DimensionMismatch(ValueError):
    pass


def check_generators(n: int) -> int:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"generator count must be a non-negative integer, got {n!r}")
    if n > GENERATOR_CAP:
        raise ValueError(f"generator count {n} exceeds the cap of {GENERATOR_CAP}")
    return n


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Residue:
    """An element of GF(p), stored as its least non-negative residue."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldError(f"cannot mix GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> Residue:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Residue(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o, self.p) * self.inverse()

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Residue(pow(self.value, k, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Residue]


class Field:
    """Common interface of :data:`Q` and :func:`GF` fields."""

    name: str
    characteristic: int

    def __call__(self, x) -> Scalar:
        raise NotImplementedError

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def ratio(self, num: int, den: int) -> Scalar:
        if self(den) == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes in {self.name}")
        return self(num) / self(den)

    def random(self, rng: random.Random, bound: int = 3) -> Scalar:
        raise NotImplementedError

    def random_nonzero(self, rng: random.Random, bound: int = 3) -> Scalar:
        while True:
            c = self.random(rng, bound)
            if c:
                return c

    def sort_key(self, x: Scalar):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __str__(self):
        return self.name


class RationalField(Field):
    name = "Q"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, Residue):
            raise FieldError("cannot coerce a GF(p) residue into Q")
        return Fraction(x)

    def random(self, rng, bound=3):
        return Fraction(rng.randint(-bound, bound))

    def sort_key(self, x):
        return x

    def __reduce__(self):
        return "Q"


class PrimeField(Field):
    def __init__(self, p: int):
        if p == 2:
            raise CharacteristicTwoError(
                "GF(2) is not supported: the Grassmann algebra theory here assumes "
                "characteristic different from 2"
            )
        if not _is_prime(p):
            raise FieldError(f"{p} is not a prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x) -> Residue:
        if isinstance(x, Residue):
            if x.p != self.p:
                raise FieldError(f"cannot coerce a GF({x.p}) residue into {self.name}")
            return x
        if isinstance(x, Fraction):
            return self.ratio(x.numerator, x.denominator)
        return Residue(int(x), self.p)

    def random(self, rng, bound=3):
        return Residue(rng.randrange(self.p), self.p)

    def sort_key(self, x):
        return x.value

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


Q = RationalField()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """Accepts ``Q``, ``GF(p)``, ``GF:p`` or ``GFp``."""
    t = text.strip().replace(" ", "")
    if t.upper() in ("Q", "QQ"):
        return Q
    up = t.upper()
    if up.startswith("GF"):
        rest = t[2:]
        if rest.startswith("(") and rest.endswith(")"):
            rest = rest[1:-1]
        elif rest.startswith(":"):
            rest = rest[1:]
        if rest.isdigit():
            return GF(int(rest))
    raise FieldError(f"unrecognised field {text!r}; expected Q or GF(p)")


# ---------------------------------------------------------------------------
# sparse row kernels
# ---------------------------------------------------------------------------

def _axpy(target: dict, c, src: Mapping) -> None:
    """target -= c * src, dropping zeros."""
    for k, v in src.items():
        t = target.get(k)
        if t is None:
            target[k] = -(c * v)
        else:
            t = t - c * v
            if t:
                target[k] = t
            else:
                del target[k]


def _as_sparse(row, field: Field, width: int) -> dict:
    if isinstance(row, Mapping):
        out = {}
        for k, v in row.items():
            if not 0 <= k < width:
                raise DimensionMismatch(f"column {k} outside 0..{width - 1}")
            v = field(v)
            if v:
                out[k] = v
        return out
    if len(row) != width:
        raise DimensionMismatch(f"expected a vector of length {width}, got {len(row)}")
    out = {}
    for k, v in enumerate(row):
        v = field(v)
        if v:
            out[k] = v
    return out


def _gauss_jordan(rows: Iterable[dict], pivot_limit: int | None = None) -> dict:
    """Incremental Gauss-Jordan; returns ``{pivot: row}`` with every row reduced.

    Pivots are only taken in columns below ``pivot_limit``; a row whose support lies
    entirely at or beyond the limit is returned under the key ``-1`` (inconsistent
    system marker) and not used for elimination.
    """
    basis: dict[int, dict] = {}
    bad = None
    for src in rows:
        row = dict(src)
        for p in [c for c in row if c in basis]:
            c = row.get(p)
            if c:
                _axpy(row, c, basis[p])
        if not row:
            continue
        cands = [c for c in row if pivot_limit is None or c < pivot_limit]
        if not cands:
            bad = row
            continue
        q = min(cands)
        inv = 1 / row[q]
        if inv != 1:
            row = {k: v * inv for k, v in row.items()}
        for b in basis.values():
            c = b.get(q)
            if c:
                _axpy(b, c, row)
        basis[q] = row
    if bad is not None:
        basis[-1] = bad
    return basis


class Subspace:
    """A subspace of the ``2**n``-dimensional coordinate space, in canonical RREF."""

    __slots__ = ("n", "field", "rows", "_dicts", "_pivots", "_monomial")

    def __init__(self, n: int, field: Field, rows: Sequence[tuple] = ()):
        # rows must already be canonical; use rref() for arbitrary input
        self.n = n
        self.field = field
        self.rows = tuple(rows)
        self._dicts = tuple(dict(r) for r in self.rows)
        self._pivots = tuple(r[0][0] for r in self.rows)
        # spanned by basis monomials: membership is a support test
        self._monomial = frozenset(self._pivots) if all(len(r) == 1 for r in self.rows) else None

    @classmethod
    def _from_basis(cls, n: int, field: Field, basis: dict) -> Subspace:
        rows = [tuple(sorted(basis[p].items())) for p in sorted(basis)]
        return cls(n, field, rows)

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int], field: Field = Q) -> Subspace:
        """Span of the basis monomials ``e_S`` for the given masks."""
        one = field.one
        return cls(n, field, [((m, one),) for m in sorted(set(masks))])

    @classmethod
    def zero(cls, n: int, field: Field = Q) -> Subspace:
        return cls(n, field, ())

    @classmethod
    def full(cls, n: int, field: Field = Q) -> Subspace:
        return cls.from_masks(n, range(1 << n), field)

    @property
    def ambient_dim(self) -> int:
        return 1 << self.n

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple:
        return self._pivots

    @property
    def basis(self) -> tuple:
        """Dense basis rows (tuples of length ``2**n``)."""
        zero = self.field.zero
        out = []
        for r in self.rows:
            dense = [zero] * self.ambient_dim
            for k, v in r:
                dense[k] = v
            out.append(tuple(dense))
        return tuple(out)

    def sparse_basis(self) -> list[dict]:
        return [dict(r) for r in self.rows]

    def reduce(self, v: Mapping) -> dict:
        """Remainder of ``v`` after elimination against the basis (empty iff v in span)."""
        if self._monomial is not None:
            return {k: c for k, c in v.items() if c and k not in self._monomial}
        rem = dict(v)
        for p, row in zip(self._pivots, self._dicts):
            c = rem.get(p)
            if c:
                _axpy(rem, c, row)
        return rem

    def contains(self, v) -> bool:
        return member(self, v)

    __contains__ = contains

    def issubspace(self, other: Subspace) -> bool:
        _same_space(self, other)
        return all(not other.reduce(r) for r in self._dicts)

    __le__ = issubspace

    def __lt__(self, other: Subspace) -> bool:
        return self.dim < other.dim and self.issubspace(other)

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def __and__(self, other: Subspace) -> Subspace:
        return subspace_intersect(self, other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def sort_key(self):
        key = self.field.sort_key
        return (self.dim, tuple(tuple((k, key(v)) for k, v in r) for r in self.rows))

    def __repr__(self):
        return f"Subspace(n={self.n}, field={self.field}, dim={self.dim})"


def _same_space(a: Subspace, b: Subspace) -> None:
    if a.n != b.n:
        raise DimensionMismatch(f"subspaces live in different spaces (n={a.n} vs n={b.n})")
    if a.field != b.field:
        raise FieldError(f"subspaces over different fields ({a.field} vs {b.field})")


def rref(rows: Iterable, n: int, field: Field = Q) -> Subspace:
    """Canonical span of ``rows`` (dense sequences of length ``2**n`` or sparse mappings)."""
    check_generators(n)
    width = 1 << n
    sparse = [_as_sparse(r, field, width) for r in rows]
    return Subspace._from_basis(n, field, _gauss_jordan(sparse))


def member(B: Subspace, v) -> bool:
    width = B.ambient_dim
    return not B.reduce(_as_sparse(v, B.field, width))


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    _same_space(A, B)
    if not B.rows:
        return A
    if not A.rows:
        return B
    basis = _gauss_jordan(list(A._dicts) + list(B._dicts))
    return Subspace._from_basis(A.n, A.field, basis)


def subspace_intersect(A: Subspace, B: Subspace) -> Subspace:
    """Zassenhaus: reduce ``[a | a]`` and ``[b | 0]``; rows vanishing on the left span A∩B."""
    _same_space(A, B)
    w = A.ambient_dim
    rows = [{**r, **{k + w: v for k, v in r.items()}} for r in A._dicts]
    rows += [dict(r) for r in B._dicts]
    basis = _gauss_jordan(rows)
    inter = [{k - w: v for k, v in row.items()} for p, row in basis.items() if p >= w]
    return Subspace._from_basis(A.n, A.field, _gauss_jordan(inter))


def rank(rows: Iterable[Mapping], field: Field = Q) -> int:
    return len(_gauss_jordan([{k: field(v) for k, v in r.items() if v} for r in rows]))


def solve(equations: Sequence[Mapping], rhs: Sequence, nvars: int, field: Field = Q):
    """One solution of ``sum_k eq[k] * x_k = rhs`` for every equation, or ``None``.

    Equations are sparse mappings from unknown index to coefficient.  Free unknowns
    are set to zero, so the answer is deterministic.
    """
    rows = []
    for eq, b in zip(equations, rhs, strict=True):
        row = {k: field(v) for k, v in eq.items() if field(v)}
        b = field(b)
        if b:
            row[nvars] = b
        if row:
            rows.append(row)
    basis = _gauss_jordan(rows, pivot_limit=nvars)
    if -1 in basis:
        return None
    x = [field.zero] * nvars
    for p, row in basis.items():
        x[p] = row.get(nvars, field.zero)
    return x


def nullspace(equations: Sequence[Mapping], nvars: int, field: Field = Q) -> list[dict]:
    """Basis of ``{x : eq . x = 0 for all eq}`` as sparse vectors."""
    basis = _gauss_jordan([{k: field(v) for k, v in eq.items() if field(v)} for eq in equations])
    free = [k for k in range(nvars) if k not in basis]
    out = []
    for f in free:
        vec = {f: field.one}
        for p, row in basis.items():
            c = row.get(f)
            if c:
                vec[p] = -c
        out.append(vec)
    return out
