"""Brute-force graded dimensions of HP0(O^G, O^H) = O^H / {O^G, O^H}.

For each polynomial degree d the span {O^G_a, O^H_b : a + b = d + 2, a >= 1}
is generated column by column from invariant orbit-sum bases, and the entry
reported is dim O^H_d minus the certified rank of that span.  Columns are
streamed through a mod-p echelon first; a full modular rank certifies
itself, and a deficit is certified over Q before being reported (quotient
functionals verified against every column, or full rational elimination as
a fallback).  Degree 0 needs no special casing: the empty bracket span is
{0} unless 1 is literally a bracket, as happens for Darboux structures
whose group fixes a Darboux pair.

Rows are compressed to orbit representatives whenever H acts monomially
(the coefficient of an invariant polynomial at a representative determines
the whole orbit); for the non-monomial reflection action the raw monomial
coordinates are kept.

The A-/A+ sector identity of the demihyperoctahedral ring (A_- equals
{A+, A-}) and its leading-term expansion
{symm(x1^(a1+1) y1^b1), symm(y1 x2^a2 y2^b2 ...)} =
((1+c)/n)(a1+1) symm(x1^a1 y1^b1 ...) + higher order,
c = #{i >= 2 : (a_i, b_i) = (0, 1)}, are exposed as dedicated checks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from ptl.linalg import (
    DEFAULT_PRIME,
    IncrementalModEchelon,
    SparseRationalEchelon,
    solve_dense_rational,
)
from ptl.poisson import (
    PoissonStructure,
    darboux_structure,
    reflection_structure,
    poisson_bracket,
    raw_bracket,
)
from ptl.poly import SparsePolynomial
from ptl.tables import GradedDimensionTable
from ptl.weyl import (
    GroupSpec,
    invariant_basis_raw,
    stabilizer_invariant_basis_raw,
    monomials_of_degree,
    orbit_rep,
)

SUBGROUP_KINDS = ("full", "last-point-stabilizer", "ambient")


@dataclass(frozen=True)
class BracketSpanProblem:
    spec: GroupSpec
    subgroup: str = "full"

    def __post_init__(self):
        if self.subgroup not in SUBGROUP_KINDS:
            raise ValueError(f"unknown subgroup kind {self.subgroup!r}")
        if self.subgroup == "last-point-stabilizer" and self.spec.family != "symmetric-reflection":
            raise ValueError("last-point-stabilizer lives inside symmetric-reflection")

    def structure(self) -> PoissonStructure:
        if self.spec.family == "symmetric-reflection":
            return reflection_structure(self.spec.n)
        return darboux_structure(self.spec.n)


@dataclass
class BracketCertificate:
    """Exact witness: sum coefficient * {u, v} equals the certified target."""

    pairs: list[tuple[SparsePolynomial, SparsePolynomial, Fraction]]

    def expand(self, structure: PoissonStructure) -> SparsePolynomial:
        total = SparsePolynomial.zero(structure.context)
        for u, v, c in self.pairs:
            total = total + poisson_bracket(u, v, structure) * c
        return total


@dataclass
class MembershipResult:
    certificate: BracketCertificate | None
    residue: SparsePolynomial | None


class GuardrailExceeded(Exception):
    def __init__(self, message: str, table: GradedDimensionTable):
        super().__init__(message)
        self.table = table


# -- bases per problem --------------------------------------------------------

def _h_basis_raw(problem: BracketSpanProblem, degree: int) -> list[dict]:
    if degree < 0:
        return []
    spec = problem.spec
    if problem.subgroup == "full":
        return invariant_basis_raw(spec, degree)
    if problem.subgroup == "last-point-stabilizer":
        return stabilizer_invariant_basis_raw(spec.n, degree)
    m = problem.structure().pairs
    return [{e: 1} for e in monomials_of_degree(2 * m, degree)]


def _g_basis_raw(problem: BracketSpanProblem, degree: int) -> list[dict]:
    return invariant_basis_raw(problem.spec, degree)


def _power_sum_generators(problem: BracketSpanProblem, degree: int) -> list[dict]:
    """Orbit sums of x1^a y1^b (an algebra generating set of O^G by degree).

    Used by the optional generator-reduction mode: since O^G is Poisson
    generated by any algebra generating set (plus y1...yn in type D), the
    span {O^G, O^H} may restrict its first slot to these elements.
    """
    spec = problem.spec
    m = spec.pairs
    if spec.family == "symmetric-reflection":
        # eliminated-coordinate images of the power sums
        out = []
        for a in range(degree, -1, -1):
            b = degree - a
            p = _reflection_power_sum(spec.n, a, b)
            if p.terms:
                out.append(dict(p.terms))
        return out
    out = []
    if degree % 2 == 0 or spec.family == "symmetric-full":
        for a in range(degree, -1, -1):
            b = degree - a
            expo = [0] * (2 * m)
            expo[0], expo[m] = a, b
            out.append({e: 1 for e in _orbit_of(tuple(expo), m)})
    if spec.family == "demihyperoctahedral" and degree == spec.n:
        expo = [0] * (2 * m)
        for i in range(m):
            expo[m + i] = 1
        out.append({tuple(expo): 1})
    return out


def _orbit_of(expo: tuple, m: int) -> list[tuple]:
    pairs = [(expo[i], expo[m + i]) for i in range(m)]
    out = set()
    for pp in set(itertools.permutations(pairs)):
        out.add(tuple(q[0] for q in pp) + tuple(q[1] for q in pp))
    return sorted(out)


def _reflection_power_sum(n: int, a: int, b: int) -> SparsePolynomial:
    spec = GroupSpec("symmetric-reflection", n)
    ctx = spec.context()
    m = n - 1
    total = SparsePolynomial.zero(ctx)
    sum_x = SparsePolynomial(ctx, {tuple(1 if k == i else 0 for k in range(2 * m)): -1
                                   for i in range(m)})
    sum_y = SparsePolynomial(ctx, {tuple(1 if k == m + i else 0 for k in range(2 * m)): -1
                                   for i in range(m)})
    for i in range(m):
        x = SparsePolynomial.variable(ctx, ctx.names[i])
        y = SparsePolynomial.variable(ctx, ctx.names[m + i])
        total = total + x ** a * y ** b
    total = total + sum_x ** a * sum_y ** b
    return total


# -- one degree cell ----------------------------------------------------------

def _cell_rows(problem: BracketSpanProblem, hbasis: list[dict], degree: int):
    """(row index map, length, compressed?) for the degree-d coordinate space."""
    m = problem.structure().pairs
    monomial_h = problem.spec.family != "symmetric-reflection" or \
        problem.subgroup == "last-point-stabilizer"
    if monomial_h and problem.subgroup != "ambient":
        index = {}
        for vec in hbasis:
            rep = max(vec)
            index[rep] = len(index)
        return index, len(index), True
    index = {e: i for i, e in enumerate(monomials_of_degree(2 * m, degree))}
    return index, len(index), False


def _column_pairs(problem: BracketSpanProblem, degree: int, generator_mode: bool):
    """Degree splits (a, b), low a first; for H = G only a <= b is needed."""
    total = degree + 2
    symmetric = problem.subgroup == "full"
    for a in range(1, total):
        b = total - a
        if b < 1:
            continue
        if symmetric and not generator_mode and a > b:
            continue
        yield a, b


def _cell_dimension(problem: BracketSpanProblem, degree: int, *,
                    prime: int = DEFAULT_PRIME, certify: str = "fast",
                    max_columns: int | None = None,
                    generator_mode: bool = False) -> int:
    """Certified dim O^H_d - rank {O^G, O^H}_d for one degree."""
    hbasis = _h_basis_raw(problem, degree)
    dim = len(hbasis)
    if dim == 0:
        return 0
    row_index, length, compressed = _cell_rows(problem, hbasis, degree)
    structure = problem.structure()

    g_cache: dict[int, list[dict]] = {}
    h_cache: dict[int, list[dict]] = {}

    def gb(a: int) -> list[dict]:
        if a not in g_cache:
            g_cache[a] = (_power_sum_generators(problem, a) if generator_mode
                          else _g_basis_raw(problem, a))
        return g_cache[a]

    def hb(b: int) -> list[dict]:
        if b not in h_cache:
            h_cache[b] = hbasis if b == degree else _h_basis_raw(problem, b)
        return h_cache[b]

    if max_columns is not None:
        n_cols = sum(len(gb(a)) * len(hb(b))
                     for a, b in _column_pairs(problem, degree, generator_mode))
        if n_cols > max_columns:
            raise GuardrailExceeded(
                f"degree {degree} needs {n_cols} columns (> {max_columns})", None)

    def columns():
        for a, b in _column_pairs(problem, degree, generator_mode):
            us = gb(a)
            vs = hb(b)
            for iu, u in enumerate(us):
                for iv, v in enumerate(vs):
                    vec = raw_bracket(u, v, structure)
                    if not vec:
                        continue
                    mapped = {}
                    for key, val in vec.items():
                        idx = row_index.get(key)
                        if idx is not None:
                            mapped[idx] = val
                    if mapped:
                        yield (a, iu, iv), mapped

    if certify == "always":
        ech = SparseRationalEchelon()
        for tag, col in columns():
            ech.add({k: Fraction(v) for k, v in col.items()}, tag)
        return dim - ech.rank

    ech = IncrementalModEchelon(length, prime)
    stored: list[dict] = []
    for tag, col in columns():
        stored.append(col)
        ech.add(col, len(stored) - 1)
        if ech.rank == dim:
            return 0  # full modular rank is full rational rank
    rank = ech.rank
    if rank == dim:
        return 0
    try:
        return dim - _certify_deficit(ech, stored, dim, compressed)
    except (ValueError, AssertionError):
        ech2 = SparseRationalEchelon()
        for col in stored:
            ech2.add({k: Fraction(v) for k, v in col.items()})
        return dim - ech2.rank


def _certify_deficit(ech: IncrementalModEchelon, stored: list[dict],
                     dim: int, compressed: bool) -> int:
    """Certify that the rational rank equals the modular rank.

    Compressed cells (coordinates = invariant-basis dimension): build the
    quotient functionals from the pivot rows and verify them against every
    column, exactly.  Uncompressed cells: rational re-elimination of the
    pivot columns, then exact reduction of every remaining column.
    Raises on any mismatch (caller falls back to full rational elimination).
    """
    rank = ech.rank
    pivots = [stored[t] for t in ech.pivot_tags]
    if not compressed:
        rat = SparseRationalEchelon()
        for col in pivots:
            if not rat.add({k: Fraction(v) for k, v in col.items()}):
                raise ValueError("pivot columns dependent over Q")
        for i, col in enumerate(stored):
            red, _ = rat.reduce_only({k: Fraction(v) for k, v in col.items()})
            if red:
                raise ValueError("modular rank deficit not rational")
        return rank
    leads = list(ech.leads)
    lead_set = set(leads)
    S = [[Fraction(col.get(r, 0)) for col in pivots] for r in leads]
    others = [r for r in range(ech.length) if r not in lead_set]
    rhs = [[Fraction(col.get(r, 0)) for col in pivots] for r in others]
    lambdas = solve_dense_rational(S, rhs)  # raises if singular
    # functional for row r: e_r - sum_j lambda_j e_{lead_j}; must kill all columns
    for r, lam in zip(others, lambdas):
        for col in stored:
            val = Fraction(col.get(r, 0))
            for j, lead in enumerate(leads):
                cj = col.get(lead)
                if cj:
                    val -= lam[j] * cj
            if val:
                raise ValueError("quotient functional fails on a column")
    return rank


# -- public operations ---------------------------------------------------------

def hp0_graded_dims(problem: BracketSpanProblem, max_degree: int, *,
                    prime: int = DEFAULT_PRIME, certify: str = "fast",
                    max_columns: int | None = None,
                    generator_mode: bool = False,
                    workers: int = 1) -> GradedDimensionTable:
    """Graded dimension table of HP0(O^G, O^H) through the given degree.

    On a resource guardrail hit the partial table is attached to the raised
    GuardrailExceeded with an explicit truncation marker in the metadata.
    """
    meta = {"group": problem.spec.family, "n": problem.spec.n,
            "grading": "polynomial-degree", "max_degree": max_degree,
            "truncated": False}
    if problem.subgroup != "full":
        meta["subgroup"] = problem.subgroup
    degrees = list(range(max_degree + 1))
    entries: dict[int, int] = {}
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        args = [(problem, d, prime, certify, max_columns, generator_mode) for d in degrees]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for d, value in zip(degrees, pool.map(_cell_task, args)):
                if value is None:
                    meta["truncated"] = True
                    meta["truncated_at_degree"] = d
                    table = GradedDimensionTable(entries, meta)
                    raise GuardrailExceeded(f"guardrail exceeded at degree {d}", table)
                if value:
                    entries[d] = value
        return GradedDimensionTable(entries, meta)
    for d in degrees:
        try:
            value = _cell_dimension(problem, d, prime=prime, certify=certify,
                                    max_columns=max_columns,
                                    generator_mode=generator_mode)
        except GuardrailExceeded:
            meta["truncated"] = True
            meta["truncated_at_degree"] = d
            table = GradedDimensionTable(entries, meta)
            raise GuardrailExceeded(f"guardrail exceeded at degree {d}", table) from None
        if value:
            entries[d] = value
    return GradedDimensionTable(entries, meta)


def _cell_task(args):
    problem, d, prime, certify, max_columns, generator_mode = args
    try:
        return _cell_dimension(problem, d, prime=prime, certify=certify,
                               max_columns=max_columns, generator_mode=generator_mode)
    except GuardrailExceeded:
        return None


def check_aminus_identity(n: int, max_degree: int, *,
                          prime: int = DEFAULT_PRIME) -> dict[int, str]:
    """Verify dim (A_-)_d = rank {A_+, A_-}_d for each odd-sector degree <= bound.

    A_+ / A_- are the sign-character eigenspaces of the demihyperoctahedral
    invariant ring (all index degrees even / all odd).  Degrees with
    (A_-)_d = 0 pass vacuously.
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    spec = GroupSpec("demihyperoctahedral", n)
    structure = darboux_structure(n)
    report: dict[int, str] = {}
    bplus_cache: dict[int, list[dict]] = {}
    aminus_cache: dict[int, list[dict]] = {}

    def aplus(a):
        if a not in bplus_cache:
            bplus_cache[a] = invariant_basis_raw(spec, a, sector="+")
        return bplus_cache[a]

    def aminus(b):
        if b not in aminus_cache:
            aminus_cache[b] = invariant_basis_raw(spec, b, sector="-")
        return aminus_cache[b]

    for d in range(0, max_degree + 1):
        if (d - n) % 2:
            continue
        target = aminus(d)
        dim = len(target)
        if dim == 0:
            report[d] = "pass"
            continue
        row_index = {max(vec): i for i, vec in enumerate(target)}
        ech = IncrementalModEchelon(dim, prime)
        stored = []
        for a in range(2, d + 2, 2):
            b = d + 2 - a
            for u in aplus(a):
                for v in aminus(b):
                    vec = raw_bracket(u, v, structure)
                    mapped = {}
                    for key, val in vec.items():
                        idx = row_index.get(key)
                        if idx is not None:
                            mapped[idx] = val
                    if mapped:
                        stored.append(mapped)
                        ech.add(mapped, len(stored) - 1)
            if ech.rank == dim:
                break
        if ech.rank == dim:
            report[d] = "pass"
            continue
        # certified deficit would disprove the identity; re-check over Q
        try:
            _certify_deficit(ech, stored, dim, True)
            certified_rank = ech.rank
        except (ValueError, AssertionError):
            rat = SparseRationalEchelon()
            for col in stored:
                rat.add({k: Fraction(v) for k, v in col.items()})
            certified_rank = rat.rank
        report[d] = "pass" if certified_rank == dim else "fail"
    return report


def bracket_membership(f: SparsePolynomial, problem: BracketSpanProblem) -> MembershipResult:
    """Constructive membership of f in {O^G, O^H}: certificate or residue.

    The residue is expressed in the graded-lex leading-monomial complement
    of the span, so residues reduce to themselves (idempotent choice).
    All arithmetic here is rational; certificates re-expand bit-exactly.
    """
    if not f.is_homogeneous() or not f.terms:
        raise ValueError("membership needs a nonzero homogeneous input")
    degree = f.degree()
    structure = problem.structure()
    if f.context != structure.context:
        raise ValueError("context mismatch")
    m = structure.pairs
    order = {e: i for i, e in enumerate(sorted(
        monomials_of_degree(2 * m, degree),
        key=lambda e: e, reverse=True))}

    def coords(p: SparsePolynomial) -> dict:
        return {order[e]: c for e, c in p.terms.items()}

    ech = SparseRationalEchelon(track=True)
    tags: dict = {}
    ctx = structure.context
    for a, b in _column_pairs(problem, degree, False):
        us = [SparsePolynomial(ctx, {e: Fraction(c) for e, c in d.items()})
              for d in _g_basis_raw(problem, a)]
        vs = [SparsePolynomial(ctx, {e: Fraction(c) for e, c in d.items()})
              for d in _h_basis_raw(problem, b)]
        for iu, u in enumerate(us):
            for iv, v in enumerate(vs):
                col = poisson_bracket(u, v, structure)
                if not col.terms:
                    continue
                tag = (a, b, iu, iv)
                tags[tag] = (u, v)
                ech.add(coords(col), tag)
    red, combo = ech.reduce_only(coords(f))
    if red:
        inv_order = {i: e for e, i in order.items()}
        residue = SparsePolynomial(f.context, {inv_order[i]: c for i, c in red.items()})
        return MembershipResult(None, residue)
    # the reducer maintains f + sum combo_t * col_t = residual, so negate
    pairs = [(tags[t][0], tags[t][1], -c) for t, c in sorted(combo.items()) if c]
    cert = BracketCertificate(pairs)
    if cert.expand(structure) != f:
        raise AssertionError("certificate failed bit-exact re-expansion")
    return MembershipResult(cert, None)


# -- leading-term identity (A_- = {A_+, A_-} expansion) ------------------------

def _pair_key(ab: tuple[int, int]) -> tuple[int, int]:
    # x^a y^b > x^a' y^b' iff a+b > a'+b', or equal total and a > a'
    return (ab[0] + ab[1], ab[0])


def symmetrized_order_key(expo: tuple, m: int) -> tuple:
    """Comparison key for symmetrized monomials: per-index pairs sorted
    descending in the two-level single-pair order, compared lexicographically."""
    pairs = sorted(((expo[i], expo[m + i]) for i in range(m)),
                   key=_pair_key, reverse=True)
    return tuple(_pair_key(p) for p in pairs)


def symmetrize(mono: SparsePolynomial, n: int) -> SparsePolynomial:
    """Average over simultaneous index permutations (coefficient 1/n!)."""
    ctx = mono.context
    out: dict = {}
    scale = Fraction(1, math.factorial(n))
    for perm in itertools.permutations(range(n)):
        for expo, c in mono.terms.items():
            img = [0] * (2 * n)
            for i in range(n):
                img[perm[i]] = expo[i]
                img[n + perm[i]] = expo[n + i]
            key = tuple(img)
            out[key] = out.get(key, 0) + c * scale
    return SparsePolynomial(ctx, out)


def leading_term_identity_report(pairs: list[tuple[int, int]]) -> dict:
    """Check the leading-term expansion behind the A_- = {A_+, A_-} identity.

    `pairs` = [(a_1, b_1), ..., (a_n, b_n)], sorted descending in the
    two-level order, with every a_i + b_i odd.  Returns a report with the
    expected and observed leading coefficient and whether every other
    symmetrized component is strictly higher in the order.
    """
    n = len(pairs)
    if n < 1:
        raise ValueError("need at least one index")
    keys = [_pair_key(p) for p in pairs]
    if keys != sorted(keys, reverse=True):
        raise ValueError("exponent pairs must be sorted descending")
    if any((a + b) % 2 == 0 for a, b in pairs):
        raise ValueError("every index must have odd total degree")
    a1, b1 = pairs[0]
    structure = darboux_structure(n)
    ctx = structure.context
    first = SparsePolynomial.monomial(
        ctx, tuple([a1 + 1] + [0] * (n - 1) + [b1] + [0] * (n - 1)))
    second_expo = [0] * (2 * n)
    second_expo[n] = 1  # y_1
    for i in range(1, n):
        second_expo[i] = pairs[i][0]
        second_expo[n + i] = pairs[i][1]
    second = SparsePolynomial.monomial(ctx, tuple(second_expo))
    bracket = poisson_bracket(symmetrize(first, n), symmetrize(second, n), structure)

    target_expo = tuple(p[0] for p in pairs) + tuple(p[1] for p in pairs)
    target_key = symmetrized_order_key(target_expo, n)
    c = sum(1 for i in range(1, n) if pairs[i] == (0, 1))
    expected = Fraction(1 + c, n) * (a1 + 1)

    components: dict[tuple, Fraction] = {}
    for expo, coeff in bracket.terms.items():
        rep = orbit_rep(expo, n)
        if rep == expo:
            orbit_size = len(_orbit_of(expo, n))
            components[rep] = coeff * orbit_size
    observed = components.get(orbit_rep(target_expo, n), Fraction(0))
    higher = all(symmetrized_order_key(rep, n) > target_key
                 for rep in components
                 if rep != orbit_rep(target_expo, n))
    return {
        "expected_leading": expected,
        "observed_leading": observed,
        "others_strictly_higher": higher,
        "ok": observed == expected and higher,
    }
