"""Aut-stable subspaces and subalgebras of the Grassmann algebra.

A stable subspace is always a direct sum of full graded components ``E_i``, so it
is described by its grade set ``G``.  Every automorphism maps ``E_s`` into
``E_s + E_{s+1} + ...``; the parts that actually occur give the closure rules

* ``s`` in ``G`` and ``s + 2 <= n``  ->  ``s + 2`` in ``G``  (cubic shears)
* ``s`` in ``G`` odd and ``s + 1 <= n``  ->  ``s + 1`` in ``G``  (inner automorphisms)

and a sum of components is stable exactly when its grade set obeys them.

The canonical forms keep the classical parametrisation: ``A(j)`` is the even ladder
``E_j + E_{j+2} + ...``; ``B(j, S, i)`` is ``sum_{k in S} E_k`` plus the ladder from
``i``; ``C(...)`` adjoins the scalars.  Literal ``B`` forms whose odd part is not
closed under ``s -> s + 2`` are not stable; they are reported by
:func:`literal_form_discrepancies` together with a witness automorphism.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb

from .fieldlin import Q, Field, Subspace, subspace_sum
from .grassmann import (
    GradedProfile,
    Multivector,
    elements_of,
    grade,
    grade_space,
    span,
)
from .morphism import (
    AlgebraMap,
    apply,
    cubic_shear,
    inner_automorphism,
    random_automorphism,
    sign_flip,
    transposition,
)

ZERO, FORM_A, FORM_B, FORM_C, SUBALG_A, SUBALG_B = "Zero", "FormA", "FormB", "FormC", "SubalgA", "SubalgB"

#: Random automorphisms tried after the deterministic witness family.
RANDOM_WITNESS_BUDGET = 200


class ClassificationAnomaly(RuntimeError):
    """A subspace matched no stable form, yet no automorphism moved it."""


class InvalidForm(ValueError):
    pass


@dataclass(frozen=True)
class CanonicalForm:
    kind: str
    j: int | None = None
    S: frozenset = dc_field(default_factory=frozenset)
    i: int | None = None
    inner: CanonicalForm | None = None

    def __post_init__(self):
        object.__setattr__(self, "S", frozenset(self.S))
        k = self.kind
        if k == ZERO:
            return
        if k in (FORM_A, SUBALG_A):
            if self.j is None or self.j <= 0 or self.j % 2:
                raise InvalidForm(f"{k} needs an even j > 0, got {self.j}")
            return
        if k in (FORM_B, SUBALG_B):
            j, S, i = self.j, self.S, self.i
            if j is None or j < 1 or j % 2 == 0:
                raise InvalidForm(f"{k} needs an odd j >= 1, got {j}")
            if j not in S or min(S) < j:
                raise InvalidForm(f"{k} needs j in S and S within j..n, got j={j}, S={sorted(S)}")
            if i is None or i <= 0 or i % 2 or i > j + 1:
                raise InvalidForm(f"{k} needs an even i with 0 < i <= j+1, got {i}")
            return
        if k == FORM_C:
            if self.inner is None or self.inner.kind not in (ZERO, FORM_A, FORM_B):
                raise InvalidForm("FormC wraps Zero, FormA or FormB")
            return
        raise InvalidForm(f"unknown form kind {k!r}")

    def grades(self, n: int) -> frozenset:
        """Grade set of the realisation (0 stands for the scalars)."""
        k = self.kind
        if k == ZERO:
            return frozenset()
        if k in (FORM_B, SUBALG_B) and max(self.S) > n:
            raise InvalidForm(f"S={sorted(self.S)} exceeds n={n}")
        if k == FORM_A:
            return frozenset(range(self.j, n + 1, 2))
        if k == SUBALG_A:
            return frozenset({0, *range(self.j, n + 1, 2)})
        if k in (FORM_B, SUBALG_B):
            return frozenset(self.S | set(range(self.i, n + 1, 2)))
        return frozenset({0}) | self.inner.grades(n)

    def subalgebra_condition(self, n: int) -> bool:
        """``{s + i : s in S, s + i <= n} ⊆ S`` (always true for the other kinds)."""
        if self.kind not in (FORM_B, SUBALG_B):
            return True
        return all(s + self.i in self.S for s in self.S if s + self.i <= n)

    def describe(self) -> str:
        k = self.kind
        if k == ZERO:
            return "0"
        if k in (FORM_A, SUBALG_A):
            return f"{'A' if k == FORM_A else 'SubalgA'}(j={self.j})"
        if k in (FORM_B, SUBALG_B):
            s = "{" + ",".join(map(str, sorted(self.S))) + "}"
            return f"{'B' if k == FORM_B else 'SubalgB'}(j={self.j},S={s},i={self.i})"
        if self.inner.kind == ZERO:
            return "C(k)"
        return f"C(k+{self.inner.describe()})"

    __str__ = describe


def realize(form: CanonicalForm, n: int, field: Field = Q, unital: bool = False) -> Subspace:
    """The subspace a form stands for; ``unital`` adjoins the scalars."""
    g = form.grades(n)
    if unital:
        g = g | {0}
    return grade_space(n, g, field)


# ---------------------------------------------------------------------------
# grade-set rules
# ---------------------------------------------------------------------------

def rule_violations(grades, n: int) -> list:
    """Closure rules broken by a grade set, as ``(s, missing)`` pairs."""
    out = []
    for s in sorted(grades):
        if s == 0:
            continue
        if s % 2 == 1 and s + 1 <= n and s + 1 not in grades:
            out.append((s, s + 1))
        if s + 2 <= n and s + 2 not in grades:
            out.append((s, s + 2))
    return out


def close_grades(grades, n: int) -> frozenset:
    g = set(grades)
    while True:
        missing = {t for _, t in rule_violations(g, n)}
        if not missing:
            return frozenset(g)
        g |= missing


def canonical_form(grades, n: int) -> CanonicalForm:
    """Form for a grade set that obeys the closure rules."""
    g = frozenset(grades)
    if rule_violations(g, n):
        raise InvalidForm(f"grade set {sorted(g)} is not closed for n={n}")
    pos = g - {0}
    if not pos:
        inner = CanonicalForm(ZERO)
    else:
        odds = sorted(s for s in pos if s % 2)
        evens = sorted(s for s in pos if s % 2 == 0)
        if not odds:
            inner = CanonicalForm(FORM_A, j=evens[0])
        else:
            j = odds[0]
            inner = CanonicalForm(FORM_B, j=j, S=frozenset(odds), i=evens[0] if evens else j + 1)
    return CanonicalForm(FORM_C, inner=inner) if 0 in g else inner


def literal_subspace_forms(n: int) -> list:
    """Every literal parameter choice of forms (a), (b), (c), plus Zero."""
    base = [CanonicalForm(ZERO)]
    base += [CanonicalForm(FORM_A, j=j) for j in range(2, n + 1, 2)]
    for j in range(1, n + 1, 2):
        rest = list(range(j + 1, n + 1))
        for r in range(len(rest) + 1):
            for extra in combinations(rest, r):
                for i in range(2, j + 2, 2):
                    base.append(CanonicalForm(FORM_B, j=j, S=frozenset((j, *extra)), i=i))
    return base + [CanonicalForm(FORM_C, inner=f) for f in base]


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _stable_grade_sets(n: int) -> dict:
    """Closed grade sets reachable from the literal forms -> canonical form."""
    out = {}
    for f in literal_subspace_forms(n):
        g = f.grades(n)
        if g not in out and not rule_violations(g, n):
            out[g] = canonical_form(g, n)
    return out


@functools.lru_cache(maxsize=None)
def _enumerate(n: int, field: Field) -> tuple:
    rows = [(form, grade_space(n, g, field)) for g, form in _stable_grade_sets(n).items()]
    rows.sort(key=lambda fs: fs[1].sort_key())
    return tuple(rows)


def enumerate_stable_subspaces(n: int, field: Field = Q) -> list:
    """All Aut-stable subspaces as ``(form, subspace)``, sorted by (dim, RREF)."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    grade_space(n, (), field)  # enforces the generator cap
    return list(_enumerate(n, field))


def graded_profile(B: Subspace) -> GradedProfile:
    n = B.n
    contained = set()
    for i in range(n + 1):
        if all(not B.reduce({m: B.field.one}) for m in range(1 << n) if grade(m) == i):
            contained.add(i)
    expected = sum(comb(n, i) for i in contained)
    return GradedProfile(n, 0 in contained, frozenset(contained - {0}), B.dim == expected)


# ---------------------------------------------------------------------------
# witnesses and decisions
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def witness_family(n: int, field: Field = Q) -> tuple:
    """Sign flips of single generators, transpositions, inner automorphisms by
    generators, and cubic shears, in that order."""
    fam = [sign_flip(n, {k}, field) for k in range(1, n + 1)]
    fam += [transposition(n, i, j, field) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    fam += [inner_automorphism(Multivector.gen(n, k, field)) for k in range(1, n + 1)]
    fam += [cubic_shear(n, j, field) for j in range(1, n - 1)]
    return tuple(fam)


@dataclass(frozen=True)
class Witness:
    sigma: AlgebraMap
    v: Multivector
    image: Multivector

    def verify(self, B: Subspace) -> bool:
        """Re-evaluate: ``v`` in ``B``, ``sigma(v)`` equals the recorded image and is not in ``B``."""
        img = apply(self.sigma, self.v)
        return img == self.image and self.v.coords() in B and img.coords() not in B

    def describe(self) -> str:
        return f"sigma={self.sigma}, v={self.v}, sigma(v)={self.image}"


@dataclass(frozen=True)
class StabilityCertificate:
    verdict: str
    matched_form: CanonicalForm | None = None
    witness: Witness | None = None

    @property
    def stable(self) -> bool:
        return self.verdict == "stable"

    def describe(self) -> str:
        if self.stable:
            return f"STABLE: form {self.matched_form}"
        return f"UNSTABLE: witness {self.witness.describe()}"


def find_witness(B: Subspace, maps, vectors=None) -> Witness | None:
    """First ``(sigma, v)`` with ``sigma(v)`` outside ``B``; basis vectors outermost."""
    vectors = elements_of(B) if vectors is None else vectors
    maps = list(maps)
    for v in vectors:
        for sigma in maps:
            img = apply(sigma, v)
            if B.reduce(img.coords()):
                return Witness(sigma, v, img)
    return None


def _random_maps(n: int, field: Field, trials: int, seed):
    rng = random.Random(seed)
    for _ in range(trials):
        yield random_automorphism(n, field=field, rng=rng)


def matched_form(B: Subspace) -> CanonicalForm | None:
    """The enumerated form realising ``B``, if any."""
    prof = graded_profile(B)
    if not prof.exact:
        return None
    return _stable_grade_sets(B.n).get(prof.grade_set())


def decide_stable(B: Subspace, random_trials: int | None = None, seed=0) -> StabilityCertificate:
    """Stable iff ``B`` is one of the enumerated subspaces; otherwise a witness.

    Raises :class:`ClassificationAnomaly` when no enumerated form matches and
    neither the witness family nor the random budget moves ``B``.
    """
    form = matched_form(B)
    if form is not None:
        return StabilityCertificate("stable", matched_form=form)
    w = find_witness(B, witness_family(B.n, B.field))
    if w is None:
        trials = RANDOM_WITNESS_BUDGET if random_trials is None else random_trials
        for sigma in _random_maps(B.n, B.field, trials, seed):
            w = find_witness(B, [sigma])
            if w is not None:
                break
    if w is None:
        raise ClassificationAnomaly(f"{B!r} matches no stable form but no automorphism moves it")
    return StabilityCertificate("unstable", witness=w)


def present_grades(B: Subspace) -> set:
    """Grades ``j`` with ``b_j != 0`` for some ``b`` in ``B``."""
    out = set()
    for r in B.rows:
        out.update(grade(m) for m, _ in r)
    return out


def stable_hull(B: Subspace) -> Subspace:
    """Smallest Aut-stable subspace containing ``B``.

    Saturates with the grade rules (a nonzero grade-``j`` component forces all of
    ``E_j``, plus the closure rules above) and with images under the witness
    family until nothing new appears.
    """
    n, fld = B.n, B.field
    family = witness_family(n, fld)
    current = B
    while True:
        grown = subspace_sum(current, grade_space(n, close_grades(present_grades(current), n), fld))
        images = [apply(s, v) for v in elements_of(grown) for s in family]
        grown = subspace_sum(grown, span(images, n, fld))
        if grown == current:
            return current
        current = grown


def is_wedge_closed(B: Subspace, unital: bool = False) -> bool:
    return _closure_failure(B, unital) is None


def _closure_failure(B: Subspace, unital: bool):
    """First basis pair whose product escapes ``B`` (or ``"unit"``), else ``None``."""
    if unital and B.reduce({0: B.field.one}):
        return "unit"
    if all(len(r) == 1 for r in B.rows):
        masks = {r[0][0] for r in B.rows}
        for a in masks:
            for b in masks:
                if not a & b and (a | b) not in masks:
                    return (a, b)
        return None
    elems = elements_of(B)
    for u in elems:
        for v in elems:
            if B.reduce((u * v).coords()):
                return (u, v)
    return None


# ---------------------------------------------------------------------------
# discrepancy reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Discrepancy:
    n: int
    form: CanonicalForm
    reason: str

    def line(self) -> str:
        return f"DISCREPANCY n={self.n} form={self.form} reason={self.reason}"


def literal_form_discrepancies(n: int, field: Field = Q) -> list:
    """Literal subspace forms whose realisation is moved by some automorphism."""
    seen = set()
    out = []
    for f in literal_subspace_forms(n):
        g = f.grades(n)
        if g in seen or not rule_violations(g, n):
            continue
        seen.add(g)
        B = grade_space(n, g, field)
        w = find_witness(B, witness_family(n, field))
        missing = ", ".join(f"E{s} forces E{t}" for s, t in rule_violations(g, n))
        reason = f"not Aut-stable ({missing}); witness {w.describe() if w else 'not found'}"
        out.append(Discrepancy(n, f, reason))
    return out


def _grade_pair_failure(g, n):
    for a in sorted(g - {0}):
        for b in sorted(g - {0}):
            if a + b <= n and a + b not in g:
                return a, b
    return None


@dataclass
class SubalgebraSurvey:
    results: list
    discrepancies: list


@functools.lru_cache(maxsize=None)
def _survey(n: int, unital: bool, field: Field) -> SubalgebraSurvey:
    # candidates from the subalgebra forms, grouped by realised grade set
    cands: dict = {}
    for j in range(2, n + 3, 2):
        f = CanonicalForm(SUBALG_A, j=j)
        cands.setdefault(f.grades(n), []).append((f, True))
        if j > n:
            break
    for j in range(1, n + 1, 2):
        rest = list(range(j + 1, n + 1))
        for r in range(len(rest) + 1):
            for extra in combinations(rest, r):
                for i in range(2, j + 2, 2):
                    f = CanonicalForm(SUBALG_B, j=j, S=frozenset((j, *extra)), i=i)
                    g = f.grades(n) | ({0} if unital else set())
                    cands.setdefault(g, []).append((f, f.subalgebra_condition(n)))

    def direct(g):
        B = grade_space(n, g, field)
        closed = _closure_failure(B, unital) is None
        return B, closed, not rule_violations(g, n)

    results, discrepancies = [], []
    truth = {}
    for g, form in _stable_grade_sets(n).items():
        if not g or (unital and 0 not in g):
            continue
        B, closed, stable = direct(g)
        if closed and stable:
            truth[g] = (form, B)
    for g, tagged in cands.items():
        claimed = [f for f, ok in tagged if ok]
        if g in truth:
            if claimed:
                truth[g] = (claimed[0], truth[g][1])
            else:
                discrepancies.append(Discrepancy(
                    n, tagged[0][0], "closed under wedge and Aut-stable but fails {s+i} ⊆ S"))
            continue
        if not claimed:
            continue
        reasons = []
        if unital and 0 not in g:
            reasons.append("does not contain 1")
        pair = _grade_pair_failure(g, n)
        B = grade_space(n, g, field)
        if _closure_failure(B, False) is not None and pair:
            a, b = pair
            reasons.append(f"not closed under wedge: E{a}∧E{b} ⊄ B (E{a + b} missing)")
        viol = rule_violations(g, n)
        if viol:
            reasons.append("not Aut-stable: " + ", ".join(f"E{s} forces E{t}" for s, t in viol))
        discrepancies.append(Discrepancy(n, claimed[0], "passes the subalgebra condition but " + "; ".join(reasons)))
    for g, (form, B) in truth.items():
        if g not in cands:
            discrepancies.append(Discrepancy(
                n, form, "closed under wedge and Aut-stable but not of the subalgebra forms"))
        results.append((form, B))
    results.sort(key=lambda fs: fs[1].sort_key())
    discrepancies.sort(key=lambda d: (sorted(d.form.grades(n)), d.form.describe()))
    return SubalgebraSurvey(results, discrepancies)


def enumerate_stable_subalgebras(n: int, unital: bool = False, field: Field = Q) -> list:
    """Aut-stable subalgebras as ``(form, subspace)``, each checked closed under wedge.

    ``unital=False`` counts any wedge-closed subspace; ``unital=True`` also demands
    ``1`` and adjoins the scalars to ``SubalgB`` realisations.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    grade_space(n, (), field)
    return list(_survey(n, unital, field).results)


def subalgebra_discrepancies(n: int, unital: bool = False, field: Field = Q) -> list:
    """Candidates where the subalgebra forms and the direct checks disagree."""
    return list(_survey(n, unital, field).discrepancies)


def discrepancy_report(entries) -> str:
    return "".join(d.line() + "\n" for d in entries)


def probe_subalgebra_form(n: int, form: CanonicalForm, unital: bool = False, field: Field = Q) -> Discrepancy | None:
    """Direct check of one subalgebra form against the condition on ``S``."""
    g = form.grades(n) | ({0} if unital and form.kind == SUBALG_B else set())
    B = grade_space(n, g, field)
    claimed = form.subalgebra_condition(n)
    closed = _closure_failure(B, unital) is None
    stable = not rule_violations(g, n)
    if claimed == (closed and stable):
        return None
    reasons = []
    pair = _grade_pair_failure(g, n)
    if not closed and pair:
        a, b = pair
        reasons.append(f"not closed under wedge: E{a}∧E{b} ⊄ B (E{a + b} missing)")
    if not stable:
        reasons.append("not Aut-stable: " + ", ".join(f"E{s} forces E{t}" for s, t in rule_violations(g, n)))
    lead = "passes the subalgebra condition but " if claimed else "fails the subalgebra condition but is closed and stable"
    return Discrepancy(n, form, lead + "; ".join(reasons))
