from fractions import Fraction

import pytest

from ptl.context import svar_context
from ptl.engine import BracketSpanProblem, hp0_graded_dims
from ptl.partitions import even_part_count, partitions
from ptl.poly import SparsePolynomial, parse_polynomial
from ptl.solver import (
    component_system,
    constraint_residual,
    family_generators,
    family_span_dims,
    is_kernel_member,
    kernel_basis,
    xi_field,
    xi_pointwise_check,
)
from ptl.weyl import GroupSpec


def test_xi_field_printed_expansion():
    xi = xi_field(1, 2)
    assert xi.coefficient(1).text() == "1"
    assert xi.coefficient(2).text() == "3/2*s2^-1*s3"


def test_xi_field_third_coefficient():
    xi = xi_field(1, 3)
    ctx = xi.coefficient(3).context
    assert xi.coefficient(3) == parse_polynomial("5/2*s2^-1*s4 - 5/8*s2^-2*s3^2", ctx)


def test_xi_field_k2():
    xi = xi_field(2, 2)
    assert xi.coefficient(2).text() == "3"


def test_xi_field_rejects_bad_k():
    with pytest.raises(ValueError):
        xi_field(0, 3)
    with pytest.raises(ValueError):
        xi_field(4, 3)


def test_xi_field_homogeneity():
    # coefficient(j) has s-degree j - k and uniform weight -4(j - k)
    for k, nmax in ((1, 5), (2, 6), (3, 7)):
        xi = xi_field(k, nmax)
        assert xi.coefficient(k) == 2 * k - 1
        for j in range(k, nmax + 1):
            c = xi.coefficient(j)
            ctx = c.context
            for expo in c.terms:
                assert ctx.degree_of(expo) == j - k
                assert ctx.weight_of(expo) == -4 * (j - k)


def test_kernel_small_n():
    assert kernel_basis(1).vectors == []
    sb2 = kernel_basis(2)
    assert [v.text() for v in sb2.vectors] == ["s1^2"]
    assert sb2.display.series() == "1"
    sb3 = kernel_basis(3)
    assert [v.text() for v in sb3.vectors] == ["s1^3"]
    assert sb3.weight_dims.total() == 1


def test_kernel_n2_excludes_s2():
    # F = a*s1^2 + b*s2: the (3/2) s3/s2 constraint forces b = 0
    system = component_system(2, -4)   # the s2 component (one part)
    assert len(system.columns) == 1
    assert system.rows  # a nonzero constraint exists
    sb = kernel_basis(2, weight=-4)
    assert sb.vectors == []


def test_kernel_weight_filter():
    sb = kernel_basis(4, weight=-8)
    assert len(sb.vectors) == 1
    assert sb.vectors[0] == parse_polynomial("-3*s1*s3 + s2^2", svar_context(4))


def test_family_generators_examples():
    assert [f.text() for f in family_generators(2)] == ["s1^2"]
    assert [f.text() for f in family_generators(3)] == ["s1^3"]
    fam5 = family_generators(5)
    # no admissible (k, g) at n = 5: generators are s1^2 * (degree-3 monomials)
    assert sorted(f.text() for f in fam5) == ["s1^2*s3", "s1^3*s2", "s1^5"]
    fam4 = {f.text() for f in family_generators(4)}
    assert "-3*s1*s3 + s2^2" in fam4


def test_family_admissible_pairs_brute():
    # family (ii) membership matches brute enumeration of (k, g)
    for n in range(2, 13):
        brute = 0
        for k in range(1, n):
            rem = n - (3 * k + 1)
            if rem < 0:
                continue
            brute += sum(1 for lam in partitions(rem)
                         if all(2 <= p <= k + 1 for p in lam))
        count_two = len(family_generators(n)) - sum(1 for _ in partitions(n - 2))
        assert count_two == brute


def test_family_membership_n_le_12():
    for n in range(2, 13):
        for f in family_generators(n):
            assert is_kernel_member(f, n), (n, f.text())


def test_product_closure():
    # products of kernel elements stay in the kernel (subalgebra property)
    bases = {n: kernel_basis(n).vectors for n in range(2, 9)}
    for m in range(2, 6):
        for n in range(m, min(8, 10 - m) + 1):
            big = svar_context(m + n)
            for F in bases[m][:3]:
                for G in bases[n][:3]:
                    Fb = SparsePolynomial(big, {e + (0,) * (m + n - len(e)): c
                                                for e, c in F.terms.items()})
                    Gb = SparsePolynomial(big, {e + (0,) * (m + n - len(e)): c
                                                for e, c in G.terms.items()})
                    assert is_kernel_member(Fb * Gb, m + n)


def test_k_range_stability():
    for n in range(2, 9):
        base = kernel_basis(n)
        extended = kernel_basis(n, k_max=2 * n)
        assert base.weight_dims == extended.weight_dims


def test_bigraded_sum_matches_total():
    for n in (4, 5, 6, 7):
        sb = kernel_basis(n)
        assert sum(dim for _, dim in sb.weight_dims.items()) == sb.weight_dims.total()
        assert sb.display.total() == sb.weight_dims.total()


def test_constraints_never_mix_weights():
    # row labels are disjoint across bigraded components, so solving
    # per-(n, w) component equals solving the full degree-n space
    from ptl.solver import _components
    for n in (4, 5, 6):
        seen = {}
        for w in _components(n):
            system = component_system(n, w)
            for label in system.labels:
                assert label not in seen, (n, w, label, seen[label])
                seen[label] = w


def test_oracle_equivalence_demihyperoctahedral():
    # the central cross-validation: brute bracket spans against the solver
    for n in (2, 3):
        table = hp0_graded_dims(
            BracketSpanProblem(GroupSpec("demihyperoctahedral", n)), 12)
        assert all(d % 4 == 0 for d in table.entries)
        sb = kernel_basis(n)
        brute_by_exponent = table.reindexed(lambda d: d // 4)
        expected = {e: c for e, c in sb.display.items() if 4 * e <= 12}
        assert dict(brute_by_exponent.items()) == expected


def test_oracle_equivalence_rank_four():
    # beyond the required n <= 3: the n = 4 tables agree through degree 12
    table = hp0_graded_dims(BracketSpanProblem(GroupSpec("demihyperoctahedral", 4)), 12)
    sb = kernel_basis(4)
    expected = {4 * e: c for e, c in sb.display.items() if 4 * e <= 12}
    assert dict(table.items()) == expected


def test_oracle_equivalence_ranks_five_six():
    # first multiplicity-two entry: D_6 in degree 8
    table5 = hp0_graded_dims(BracketSpanProblem(GroupSpec("demihyperoctahedral", 5)), 8)
    sb5 = kernel_basis(5)
    assert dict(table5.items()) == {4 * e: c for e, c in sb5.display.items() if e <= 2}
    table6 = hp0_graded_dims(BracketSpanProblem(GroupSpec("demihyperoctahedral", 6)), 8)
    sb6 = kernel_basis(6)
    assert dict(table6.items()) == {4 * e: c for e, c in sb6.display.items() if e <= 2}
    assert table6.get(8) == 2


def test_solver_certification_survives_bad_primes():
    # a tiny prime forces rank undercounts; certification must repair them
    for p in (3, 5):
        for n in (4, 6, 8):
            assert kernel_basis(n, prime=p).weight_dims == kernel_basis(n).weight_dims


def test_hh0_comparison():
    totals = {n: kernel_basis(n).weight_dims.total() for n in range(2, 9)}
    for n in range(2, 7):
        assert totals[n] == even_part_count(n)
    assert totals[7] > even_part_count(7)
    assert totals[8] > even_part_count(8)


def test_n8_extra_solution_at_weight_minus_20():
    sb = kernel_basis(8)
    fam = family_span_dims(8)
    assert sb.weight_dims.get(-20) == fam.get(-20) + 1
    for w, dim in sb.weight_dims.items():
        if w != -20:
            assert dim == fam.get(w)
    # and every kernel vector is certified exactly
    for v in sb.vectors:
        assert is_kernel_member(v, 8)


def test_kernel_members_annihilated_pointwise(rng):
    # xi_k(F) vanishes at every stratum point: the component sum is zero
    # (individual derivation components may cancel against each other)
    sb = kernel_basis(4)
    for F in sb.vectors:
        for k in (1, 2):
            point = {f"s{2*k}": Fraction(rng.randint(1, 5)),
                     f"s{2*k+1}": Fraction(rng.randint(-5, 5)),
                     f"s{2*k+2}": Fraction(rng.randint(-5, 5))}
            values = xi_pointwise_check(F, k, point)
            assert sum(values.values()) == 0


def test_pointwise_examples():
    ctx = svar_context(2)
    s1 = SparsePolynomial.variable(ctx, "s1")
    out = xi_pointwise_check(s1 * s1, 1, {"s2": 1, "s3": 5})
    assert all(v == 0 for v in out.values())
    s2 = SparsePolynomial.variable(ctx, "s2")
    out = xi_pointwise_check(s2, 1, {"s2": 1, "s3": 2})
    assert out[2] == 3


def test_pointwise_rejects_off_stratum():
    ctx = svar_context(2)
    s2 = SparsePolynomial.variable(ctx, "s2")
    with pytest.raises(ValueError):
        xi_pointwise_check(s2, 1, {"s1": 1, "s2": 1})
    with pytest.raises(ValueError):
        xi_pointwise_check(s2, 1, {"s2": 0, "s3": 1})


def test_constraint_residual_detects_nonmembers():
    ctx = svar_context(2)
    s2 = SparsePolynomial.variable(ctx, "s2")
    assert constraint_residual(s2, 1, 2)
    assert not is_kernel_member(s2, 2)
