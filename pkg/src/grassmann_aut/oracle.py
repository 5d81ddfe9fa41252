"""Brute-force ground truth and the cross-validation harness.

Over GF(p) with tiny ``n`` every automorphism and every subspace can be listed,
so Aut-stability can be decided straight from the definition.  Larger cases use
the witness family plus seeded random automorphisms.

Reports are plain text, one check per line::

    CHECK <name> n=<n> field=<f> seed=<s> -> PASS|FAIL <detail>
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product

from . import classify
from .fieldlin import GF, Q, Field, Subspace, _axpy
from .grassmann import (
    Multivector,
    center_of,
    commutator,
    commutator_subalgebra,
    elements_of,
    even_subspace,
    grade,
    grade_project,
    grade_space,
    is_odd,
    wedge,
)
from .morphism import (
    derivation_power,
    exp_inner,
    factor_n1_f0,
    inner_automorphism,
    is_automorphism,
    is_parity_preserving,
    make_map,
    random_automorphism,
    random_element,
    random_odd,
)

DEFAULT_BUDGET = 10 ** 8


class BudgetExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------

def enumerate_automorphisms(n: int, p: int, budget: int = DEFAULT_BUDGET) -> list:
    """Every automorphism over GF(p), found by searching generator-image tuples."""
    fld = GF(p)
    masks = list(range(1, 1 << n))
    space = p ** (n * len(masks))
    if space > budget:
        raise BudgetExceeded(f"{space} candidate image tuples exceed the budget of {budget}")
    cands = []
    for coeffs in product(range(p), repeat=len(masks)):
        g = Multivector(n, dict(zip(masks, coeffs)), fld)
        if g and not wedge(g, g):
            cands.append(g)
    lin = [[g.coeff(1 << k) for k in range(n)] for g in cands]

    from .fieldlin import rank

    out = []

    def extend(chosen: list) -> None:
        if len(chosen) == n:
            out.append(make_map([cands[c] for c in chosen], n))
            return
        for c in range(len(cands)):
            g = cands[c]
            if any(wedge(g, cands[d]) + wedge(cands[d], g) for d in chosen):
                continue
            rows = [dict(enumerate(lin[d])) for d in chosen + [c]]
            if rank(rows, fld) < len(rows):
                continue
            chosen.append(c)
            extend(chosen)
            chosen.pop()

    extend([])
    return out


def gaussian_binomial(m: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of GF(q)^m."""
    if k < 0 or k > m:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(m: int, q: int) -> int:
    return sum(gaussian_binomial(m, k, q) for k in range(m + 1))


def enumerate_subspaces(n: int, p: int = 3, budget: int = 10 ** 6):
    """Every subspace of GF(p)^(2^n) once, by dimension, pivot set, then free entries."""
    fld = GF(p)
    width = 1 << n
    total = count_subspaces(width, p)
    if total > budget:
        raise BudgetExceeded(f"{total} subspaces exceed the budget of {budget}")
    one = fld.one
    for k in range(width + 1):
        for pivots in combinations(range(width), k):
            pset = set(pivots)
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, width) if c not in pset]
            for vals in product(range(p), repeat=len(free)):
                rows = [{pc: one} for pc in pivots]
                for (r, c), v in zip(free, vals):
                    if v:
                        rows[r][c] = fld(v)
                yield Subspace(n, fld, [tuple(sorted(r.items())) for r in rows])


def _preserves(columns: list, B: Subspace) -> bool:
    for row in B.rows:
        img: dict = {}
        for m, c in row:
            _axpy(img, -c, columns[m])
        if B.reduce(img):
            return False
    return True


def exhaustive_stable_set(n: int, p: int, budget: int = DEFAULT_BUDGET) -> list:
    """Subspaces preserved by every automorphism, straight from the definition."""
    autos = enumerate_automorphisms(n, p, budget)
    columns = [a.matrix() for a in autos]
    return [B for B in enumerate_subspaces(n, p) if all(_preserves(cols, B) for cols in columns)]


# ---------------------------------------------------------------------------
# randomized testing
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=64)
def random_maps(n: int, field: Field, trials: int, seed) -> tuple:
    """The seeded sample used by :func:`randomized_stability` (shared between calls)."""
    rng = random.Random(seed)
    return tuple(random_automorphism(n, field=field, rng=rng) for _ in range(trials))


@dataclass(frozen=True)
class StabilityReport:
    n: int
    field: Field
    seed: object
    trials: int
    source: str | None = None
    witness: classify.Witness | None = None

    @property
    def violated(self) -> bool:
        return self.witness is not None

    def format(self) -> str:
        head = f"RANDOMIZED n={self.n} field={self.field} seed={self.seed} trials={self.trials} ->"
        if self.witness is None:
            return f"{head} no violation found"
        return f"{head} violation ({self.source}) {self.witness.describe()}"

    __str__ = format


def randomized_stability(B: Subspace, trials: int = 500, seed=0) -> StabilityReport:
    """Apply the witness family, then ``trials`` seeded random automorphisms."""
    family = classify.witness_family(B.n, B.field)
    vectors = elements_of(B)
    w = classify.find_witness(B, family, vectors)
    if w is not None:
        return StabilityReport(B.n, B.field, seed, trials, "witness family", w)
    for k, sigma in enumerate(random_maps(B.n, B.field, trials, seed)):
        w = classify.find_witness(B, [sigma], vectors)
        if w is not None:
            return StabilityReport(B.n, B.field, seed, trials, f"random #{k}", w)
    return StabilityReport(B.n, B.field, seed, trials)


def graded_sums(n: int, field: Field = Q) -> list:
    """All ``2^(n+1)`` sums of full graded components, with or without the scalars."""
    out = []
    for bits in range(1 << (n + 1)):
        g = [i for i in range(n + 1) if bits >> i & 1]
        out.append(grade_space(n, g, field))
    return out


# ---------------------------------------------------------------------------
# individual checks; each returns (ok, detail)
# ---------------------------------------------------------------------------

def check_center(n, field, rng):
    brute = center_of(n, "bruteforce", field)
    ok = brute == center_of(n, "formula", field)
    return ok, f"dim={brute.dim}"


def check_commutator_subalgebra(n, field, rng):
    com = commutator_subalgebra(n, field)
    ok = com == even_subspace(n, field) and com.dim == 1 << (n - 1)
    if n % 2 == 0:
        ok = ok and com == center_of(n, "bruteforce", field)
    return ok, f"dim={com.dim}"


def odd_monomials(n, field):
    return [Multivector.monomial(n, m, 1, field) for m in range(1 << n) if grade(m) % 2]


def check_double_commutator(n, field, rng, trials=200):
    if n <= 4:
        odds = odd_monomials(n, field)
        basis = [Multivector.monomial(n, m, 1, field) for m in range(1 << n)]
        bad = sum(1 for a in odds for b in odds for x in basis if commutator(a, commutator(b, x)))
        return bad == 0, f"exhaustive {len(odds) ** 2 * len(basis)} triples, {bad} nonzero"
    bad = 0
    for _ in range(trials):
        a, b = random_odd(n, rng, field), random_odd(n, rng, field)
        x = random_element(n, rng, field)
        bad += bool(commutator(a, commutator(b, x)))
    return bad == 0, f"random {trials} triples, {bad} nonzero"


def check_exp_inner(n, field, rng, trials=50):
    bad = 0
    for _ in range(trials):
        a = random_odd(n, rng, field)
        k = field.random_nonzero(rng)
        m = exp_inner(k, a)
        x = random_element(n, rng, field)
        if m != inner_automorphism(a.scale(k)) or not is_automorphism(m) or derivation_power(a, x, 2):
            bad += 1
    return bad == 0, f"{trials} samples, {bad} bad"


def check_factorization(n, field, rng, trials=50):
    bad = 0
    for _ in range(trials):
        m = random_automorphism(n, field=field, rng=rng)
        fac = factor_n1_f0(m)
        if not (is_odd(fac.a) and is_parity_preserving(fac.f) and fac.recompose() == m):
            bad += 1
    return bad == 0, f"{trials} samples, {bad} bad"


def check_soundness(n, field, rng, trials, seed):
    bad = [str(f) for f, B in classify.enumerate_stable_subspaces(n, field)
           if randomized_stability(B, trials, seed).violated]
    return not bad, f"{len(classify.enumerate_stable_subspaces(n, field))} subspaces, moved: {bad or 'none'}"


def check_graded_completeness(n, field, rng, trials, seed):
    disagree = 0
    anomalies = 0
    for B in graded_sums(n, field):
        try:
            cert = classify.decide_stable(B, seed=seed)
        except classify.ClassificationAnomaly:
            anomalies += 1
            continue
        rep = randomized_stability(B, trials, seed)
        if cert.stable == rep.violated:
            disagree += 1
        if not cert.stable and not cert.witness.verify(B):
            disagree += 1
    return disagree == 0 and anomalies == 0, f"{2 ** (n + 1)} graded sums, {disagree} disagreements, {anomalies} anomalies"


def check_closure_rules(n, field, rng, members=20):
    bad = 0
    for _, B in classify.enumerate_stable_subspaces(n, field):
        elems = elements_of(B)
        if not elems:
            continue
        for _ in range(members):
            a = sum((v.scale(field.random(rng)) for v in elems), Multivector.zero(n, field))
            for j in range(n + 1):
                if not grade_project(a, j):
                    continue
                need = {j}
                if j % 2 == 1 and j < n:
                    need.add(j + 1)
                if j % 2 == 0 and 0 < j < n - 1:
                    need.update(range(j, n + 1, 2))
                if not grade_space(n, need, field) <= B:
                    bad += 1
    return bad == 0, f"{bad} violations"


def check_subalgebras(n, field, rng):
    bad = []
    count = 0
    for unital in (False, True):
        for f, B in classify.enumerate_stable_subalgebras(n, unital, field):
            count += 1
            if not classify.is_wedge_closed(B, unital):
                bad.append(str(f))
    return not bad, f"{count} outputs, not closed: {bad or 'none'}"


def check_exhaustive(n, p):
    fld = GF(p)
    autos = enumerate_automorphisms(n, p)
    truth = set(exhaustive_stable_set(n, p))
    theory = {B for _, B in classify.enumerate_stable_subspaces(n, fld)}
    gl = 1
    for i in range(n):
        gl *= p ** n - p ** i
    factored = all(factor_n1_f0(a).recompose() == a for a in autos)
    ok = truth == theory and len(autos) % gl == 0 and factored
    return ok, f"{len(autos)} automorphisms, {len(truth)} stable subspaces (classification {len(theory)})"


# ---------------------------------------------------------------------------
# harness
# ---------------------------------------------------------------------------

@dataclass
class Report:
    lines: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not any(line.startswith("CHECK") and "-> FAIL" in line for line in self.lines)

    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)


def cross_validate(n: int, field: Field = Q, mode: str = "randomized", seed=42, trials: int = 100) -> Report:
    """Run every check that is feasible at this size and collect one line per check.

    ``randomized`` mode runs the sampling checks for ``n <= 6``; beyond that only
    the center, commutator-subalgebra and subalgebra checks run.  ``exhaustive``
    additionally compares with brute force over GF(p) (``n <= 2``).
    """
    report = Report()
    rng = random.Random(seed)

    def run(name, fn, *args):
        try:
            ok, detail = fn(*args)
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        verdict = "PASS" if ok else "FAIL"
        report.lines.append(f"CHECK {name} n={n} field={field} seed={seed} -> {verdict} {detail}")

    if mode == "exhaustive":
        if field.characteristic == 0:
            raise ValueError("exhaustive mode needs a finite field")
        run("exhaustive-stable-set", check_exhaustive, n, field.characteristic)
    if n <= 8:
        run("center", check_center, n, field, rng)
        run("commutator-subalgebra", check_commutator_subalgebra, n, field, rng)
    if n <= 6:
        run("double-commutator", check_double_commutator, n, field, rng)
        run("exp-inner", check_exp_inner, n, field, rng)
        run("factorization", check_factorization, n, field, rng)
        run("enumeration-soundness", check_soundness, n, field, rng, trials, seed)
        run("graded-completeness", check_graded_completeness, n, field, rng, trials, seed)
        run("closure-rules", check_closure_rules, n, field, rng)
    run("subalgebra-closure", check_subalgebras, n, field, rng)
    entries = classify.literal_form_discrepancies(n, field) if n <= 6 else []
    entries += classify.subalgebra_discrepancies(n, False, field)
    entries += [d for d in classify.subalgebra_discrepancies(n, True, field) if d not in entries]
    report.lines += [d.line() for d in entries]
    return report
