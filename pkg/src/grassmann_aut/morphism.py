"""Algebra endomorphisms and automorphisms of the Grassmann algebra.

An endomorphism is fixed by the images ``g_1, ..., g_n`` of the generators.  It is
well defined exactly when the images have no scalar part and pairwise
anticommute, and it is an automorphism exactly when the degree-one parts of the
images are linearly independent (the algebra is local).

Every automorphism splits as ``(Id + [a, -]) ∘ f`` with ``a`` odd and ``f``
parity-preserving; :func:`factor_n1_f0` computes that splitting.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .fieldlin import Q, DimensionMismatch, Field, FieldError, rank, solve
from .grassmann import (
    Multivector,
    commutator,
    grade,
    is_odd,
    parity_part,
    wedge,
)


class MorphismError(ValueError):
    pass


class WrongArity(MorphismError):
    pass


class ScalarPartPresent(MorphismError):
    pass


class RelationViolation(MorphismError):
    def __init__(self, i: int, j: int):
        super().__init__(f"images of e{i} and e{j} do not anticommute")
        self.i = i
        self.j = j


class NotInvertible(MorphismError):
    pass


class NotAutomorphism(MorphismError):
    pass


class NonOddElement(MorphismError):
    pass


class ZeroScalar(MorphismError):
    pass


class FactorizationFailed(AssertionError):
    """The N1 x F0 splitting did not exist or did not recompose.  Never expected."""


class AlgebraMap:
    """Endomorphism determined by generator images.  Build with :func:`make_map`.

    Images of basis monomials are memoised on first use; the memo only ever
    receives the same value for a key, so sharing a map between threads is safe.
    """

    __slots__ = ("n", "field", "images", "label", "_memo")

    def __init__(self, images: Sequence[Multivector], label: str | None = None):
        images = tuple(images)
        self.n = len(images)
        self.field = images[0].field if images else Q
        self.images = images
        self.label = label
        self._memo = {0: Multivector.scalar(self.n, 1, self.field)}

    def image_of_mask(self, mask: int) -> Multivector:
        got = self._memo.get(mask)
        if got is None:
            high = mask.bit_length() - 1
            got = wedge(self.image_of_mask(mask & ~(1 << high)), self.images[high])
            self._memo[mask] = got
        return got

    def __call__(self, x: Multivector) -> Multivector:
        return apply(self, x)

    def matrix(self) -> list:
        """Columns of the induced linear map, one sparse column per basis mask."""
        return [self.image_of_mask(m).coords() for m in range(1 << self.n)]

    def linear_part(self) -> list:
        """``n x n`` rows: row ``i`` holds the degree-one coefficients of ``g_{i+1}``."""
        return [[g.coeff(1 << k) for k in range(self.n)] for g in self.images]

    def __eq__(self, other):
        if not isinstance(other, AlgebraMap):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def describe(self) -> str:
        body = ", ".join(f"e{i + 1}->{g}" for i, g in enumerate(self.images))
        return f"[{body}]"

    def __str__(self):
        return self.label or self.describe()

    def __repr__(self):
        return f"AlgebraMap(n={self.n}, {self.describe()})"


def make_map(images: Sequence[Multivector], n: int | None = None, label: str | None = None) -> AlgebraMap:
    """Validated endomorphism from generator images."""
    images = list(images)
    if n is None:
        if not images:
            raise WrongArity("need at least one image (or pass n=0)")
        n = images[0].n
    if len(images) != n:
        raise WrongArity(f"expected {n} images, got {len(images)}")
    for g in images:
        if g.n != n:
            raise WrongArity(f"image {g} lives in {g.n} generators, expected {n}")
        if g.field != images[0].field:
            raise FieldError("images over different fields")
    for i, g in enumerate(images):
        if g.coeff(0):
            raise ScalarPartPresent(f"image of e{i + 1} has scalar part {g.coeff(0)}")
    for i in range(n):
        for j in range(i, n):
            gi, gj = images[i], images[j]
            if wedge(gi, gj) + wedge(gj, gi):
                raise RelationViolation(i + 1, j + 1)
    return AlgebraMap(images, label)


def apply(m: AlgebraMap, x: Multivector) -> Multivector:
    if x.n != m.n:
        raise DimensionMismatch(f"map on {m.n} generators applied to element on {x.n}")
    out = Multivector.zero(m.n, m.field)
    for mask, c in x.terms.items():
        out = out + m.image_of_mask(mask).scale(c)
    return out


def is_automorphism(m: AlgebraMap) -> bool:
    return rank([dict(enumerate(row)) for row in m.linear_part()], m.field) == m.n


def invert(m: AlgebraMap) -> AlgebraMap:
    """Inverse automorphism, read off by solving ``m(x) = e_i`` on the full matrix."""
    if not is_automorphism(m):
        raise NotInvertible("degree-one part of the images is singular")
    size = 1 << m.n
    cols = m.matrix()
    rows: dict = {}
    for s, col in enumerate(cols):
        for u, c in col.items():
            rows.setdefault(u, {})[s] = c
    keys = sorted(rows)
    equations = [rows[u] for u in keys]
    images = []
    for i in range(m.n):
        target = 1 << i
        rhs = [1 if u == target else 0 for u in keys]
        x = solve(equations, rhs, size, m.field)
        if x is None:
            raise NotInvertible(f"e{i + 1} has no preimage")
        images.append(Multivector(m.n, dict(enumerate(x)), m.field))
    label = f"inverse({m.label})" if m.label else None
    return AlgebraMap(images, label)


def compose(m1: AlgebraMap, m2: AlgebraMap) -> AlgebraMap:
    """``m1 ∘ m2``: apply ``m2`` first."""
    if m1.n != m2.n:
        raise DimensionMismatch(f"cannot compose maps on {m1.n} and {m2.n} generators")
    label = f"{m1.label}*{m2.label}" if m1.label and m2.label else None
    return AlgebraMap([apply(m1, g) for g in m2.images], label)


# ---------------------------------------------------------------------------
# named automorphisms
# ---------------------------------------------------------------------------

def _gens(n: int, field: Field) -> list:
    return [Multivector.gen(n, i, field) for i in range(1, n + 1)]


def identity(n: int, field: Field = Q) -> AlgebraMap:
    return AlgebraMap(_gens(n, field), "id")


def _check_index(n: int, i: int) -> None:
    if not 1 <= i <= n:
        raise IndexError(f"generator index {i} outside 1..{n}")


def transposition(n: int, i: int, j: int, field: Field = Q) -> AlgebraMap:
    """Swap ``e_i`` and ``e_j``, fix the other generators."""
    _check_index(n, i)
    _check_index(n, j)
    if i == j:
        raise IndexError("transposition needs two distinct indices")
    g = _gens(n, field)
    g[i - 1], g[j - 1] = g[j - 1], g[i - 1]
    return AlgebraMap(g, f"swap({i},{j})")


def sign_flip(n: int, S: Iterable[int], field: Field = Q) -> AlgebraMap:
    """Negate ``e_i`` for ``i`` in ``S``."""
    S = sorted(set(S))
    for i in S:
        _check_index(n, i)
    g = _gens(n, field)
    for i in S:
        g[i - 1] = -g[i - 1]
    return AlgebraMap(g, "flip({" + ",".join(map(str, S)) + "})")


def cubic_shear(n: int, j: int, field: Field = Q) -> AlgebraMap:
    """``e_1 -> e_1 + e_1 ∧ e_{j+1} ∧ e_{j+2}``, other generators fixed.

    Applied to ``e_1 ∧ ... ∧ e_j`` it adds a nonzero multiple of
    ``e_1 ∧ ... ∧ e_{j+2}``, for either parity of ``j``.
    """
    if j < 1 or j + 2 > n:
        raise IndexError(f"cubic shear needs 1 <= j and j + 2 <= n (got j={j}, n={n})")
    g = _gens(n, field)
    g[0] = g[0] + wedge(wedge(g[0], g[j]), g[j + 1])
    return AlgebraMap(g, f"shear({j})")


def inner_automorphism(a: Multivector) -> AlgebraMap:
    """``x -> x + [a, x]`` for odd ``a``."""
    if not is_odd(a):
        raise NonOddElement(f"{a} has a nonzero even component")
    images = [e + commutator(a, e) for e in _gens(a.n, a.field)]
    return AlgebraMap(images, f"inner({a})")


def exp_inner(k, a: Multivector) -> AlgebraMap:
    """Exponential of the derivation ``k [a, -]``, evaluated as its power series.

    For odd ``a`` the second power of ``[a, -]`` vanishes, so the series stops after
    the linear term and no factorial beyond ``1!`` is ever divided by.
    """
    k = a.field(k)
    if not k:
        raise ZeroScalar("the exponential needs a nonzero scalar")
    if not is_odd(a):
        raise NonOddElement(f"{a} has a nonzero even component")
    images = []
    for e in _gens(a.n, a.field):
        total, term, i = e, e, 1
        while True:
            term = commutator(a, term)
            if not term:
                break
            if a.field(i) == 0:
                raise ArithmeticError(f"series needs division by {i}! in {a.field}")
            term = term.scale(k / a.field(i))
            total = total + term
            i += 1
        images.append(total)
    return make_map(images, a.n, label=f"exp({k}*[{a},-])")


def derivation_power(a: Multivector, x: Multivector, power: int) -> Multivector:
    """``[a, -]`` applied ``power`` times to ``x``."""
    for _ in range(power):
        x = commutator(a, x)
    return x


def is_parity_preserving(m: AlgebraMap) -> bool:
    return all(is_odd(g) for g in m.images)


@dataclass(frozen=True)
class Factorization:
    """``m = (Id + [a, -]) ∘ f`` with ``a`` odd and ``f`` parity-preserving."""

    a: Multivector
    f: AlgebraMap

    def recompose(self) -> AlgebraMap:
        return compose(inner_automorphism(self.a), self.f)


def factor_n1_f0(m: AlgebraMap) -> Factorization:
    """Split an automorphism into its inner-by-odd and parity-preserving parts.

    ``f`` keeps the odd parts of the images.  ``a`` solves ``[a, f(e_i)] = (m(e_i))_even``
    over the odd monomials; when ``n`` is odd the top monomial is central and its
    coefficient is fixed to zero.
    """
    if not is_automorphism(m):
        raise NotAutomorphism("map is not an automorphism")
    n, fld = m.n, m.field
    f = AlgebraMap([parity_part(g, "odd") for g in m.images], m.label and f"F0({m.label})")
    targets = [parity_part(g, "even") for g in m.images]
    top = (1 << n) - 1
    unknowns = [s for s in range(1 << n) if grade(s) % 2 == 1 and s != top]
    equations: dict = {}
    for col, s in enumerate(unknowns):
        es = Multivector.monomial(n, s, 1, fld)
        for i, fi in enumerate(f.images):
            for u, c in commutator(es, fi).terms.items():
                equations.setdefault((i, u), {})[col] = c
    for i, t in enumerate(targets):
        for u in t.terms:
            equations.setdefault((i, u), {})
    keys = sorted(equations)
    rhs = [targets[i].coeff(u) for i, u in keys]
    sol = solve([equations[k] for k in keys], rhs, len(unknowns), fld)
    if sol is None:
        raise FactorizationFailed(f"no odd a with (Id + [a,-]) ∘ f = {m!r}")
    a = Multivector(n, dict(zip(unknowns, sol)), fld)
    result = Factorization(a, f)
    if result.recompose() != m:
        raise FactorizationFailed(f"recomposition differs for {m!r}")
    return result


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SamplingProfile:
    """Mixture weights for :func:`random_automorphism`.

    Each sample composes between 1 and ``depth`` factors; each factor is a random
    invertible linear substitution, a linear substitution with higher odd terms
    added to the images, or an inner automorphism by a random odd element.
    """

    linear: float = 1.0
    perturb: float = 1.0
    inner: float = 1.0
    depth: int = 3
    bound: int = 2
    terms: int = 3


PROFILES = {
    "linear": SamplingProfile(linear=1, perturb=0, inner=0, depth=1),
    "inner": SamplingProfile(linear=0, perturb=0, inner=1, depth=1),
    "parity": SamplingProfile(linear=1, perturb=1, inner=0, depth=2),
    "mixed": SamplingProfile(),
}


def random_element(n: int, rng: random.Random, field: Field = Q, *, terms: int = 3,
                   grades: Iterable[int] | None = None, bound: int = 2) -> Multivector:
    """Sparse random element with up to ``terms`` monomials drawn from ``grades``."""
    allowed = set(range(n + 1) if grades is None else grades)
    masks = [m for m in range(1 << n) if grade(m) in allowed]
    if not masks:
        return Multivector.zero(n, field)
    out = {}
    for _ in range(rng.randint(1, terms)):
        out[rng.choice(masks)] = field.random_nonzero(rng, bound)
    return Multivector(n, out, field)


def random_odd(n: int, rng: random.Random, field: Field = Q, *, terms: int = 3, bound: int = 2,
               min_grade: int = 1) -> Multivector:
    grades = [g for g in range(max(min_grade, 1), n + 1) if g % 2 == 1]
    return random_element(n, rng, field, terms=terms, bound=bound, grades=grades)


def random_linear(n: int, rng: random.Random, field: Field = Q, bound: int = 2) -> AlgebraMap:
    gens = _gens(n, field)
    while True:
        mat = [[field.random(rng, bound) for _ in range(n)] for _ in range(n)]
        if rank([dict(enumerate(r)) for r in mat], field) == n:
            break
    images = [sum((gens[k].scale(mat[i][k]) for k in range(n)), Multivector.zero(n, field))
              for i in range(n)]
    return AlgebraMap(images, None)


def _random_perturbed(n: int, rng: random.Random, field: Field, prof: SamplingProfile) -> AlgebraMap:
    base = random_linear(n, rng, field, prof.bound)
    if n < 3:
        return base
    images = [g + random_odd(n, rng, field, terms=prof.terms, bound=prof.bound, min_grade=3)
              for g in base.images]
    return AlgebraMap(images, None)


def random_automorphism(n: int, seed=None, profile: str | SamplingProfile = "mixed",
                        field: Field = Q, rng: random.Random | None = None) -> AlgebraMap:
    """Seeded random automorphism; identical seeds give identical maps."""
    prof = PROFILES[profile] if isinstance(profile, str) else profile
    rng = rng if rng is not None else random.Random(seed)
    kinds = ["linear", "perturb", "inner"]
    weights = [prof.linear, prof.perturb, prof.inner]
    result = identity(n, field)
    for _ in range(rng.randint(1, prof.depth)):
        kind = rng.choices(kinds, weights)[0]
        if kind == "linear":
            factor = random_linear(n, rng, field, prof.bound)
        elif kind == "perturb":
            factor = _random_perturbed(n, rng, field, prof)
        else:
            factor = inner_automorphism(random_odd(n, rng, field, terms=prof.terms, bound=prof.bound))
        result = compose(factor, result)
    return AlgebraMap(result.images)
