from fractions import Fraction

import pytest

from ptl.poisson import (
    darboux_structure,
    poisson_bracket,
    raw_bracket,
    reflection_structure,
    sl2_generators,
)
from ptl.poly import SparsePolynomial


def _var(P, name):
    return SparsePolynomial.variable(P.context, name)


def _random_poly(P, rng, max_terms=3, max_deg=2):
    terms = {}
    arity = P.context.arity
    for _ in range(rng.randint(1, max_terms)):
        expo = tuple(rng.randint(0, max_deg) for _ in range(arity))
        terms[expo] = terms.get(expo, 0) + Fraction(rng.randint(-4, 4))
    return SparsePolynomial(P.context, terms)


def test_darboux_basic_relations():
    P = darboux_structure(1)
    x, y = _var(P, "x1"), _var(P, "y1")
    assert poisson_bracket(x, y, P) == 1
    assert poisson_bracket(x * x, y * y, P) == 4 * x * y


def test_reflection_structure_constant():
    R = reflection_structure(2)
    x, y = _var(R, "x1"), _var(R, "y1")
    assert poisson_bracket(x, y, R) == Fraction(1, 2)
    R3 = reflection_structure(3)
    x1, y2 = _var(R3, "x1"), _var(R3, "y2")
    assert poisson_bracket(x1, y2, R3) == Fraction(-1, 3)
    assert poisson_bracket(x1, _var(R3, "y1"), R3) == Fraction(2, 3)


def test_sl2_printed_generators():
    P = darboux_structure(2)
    E, F, H = sl2_generators(P)
    x1, x2 = _var(P, "x1"), _var(P, "x2")
    y1, y2 = _var(P, "y1"), _var(P, "y2")
    assert E == x1 * x1 + x2 * x2
    assert F == y1 * y1 + y2 * y2
    assert H == x1 * y1 + x2 * y2


def test_sl2_brackets():
    for P in (darboux_structure(1), darboux_structure(3), reflection_structure(3)):
        E, F, H = sl2_generators(P)
        assert poisson_bracket(E, H, P) == 2 * E
        assert poisson_bracket(F, H, P) == -2 * F
    P = darboux_structure(1)
    E, F, H = sl2_generators(P)
    assert poisson_bracket(E, F, P) == 4 * H


def test_bracket_context_mismatch():
    P = darboux_structure(2)
    Q = darboux_structure(1)
    with pytest.raises(ValueError):
        poisson_bracket(_var(P, "x1"), _var(Q, "x1"), P)


@pytest.mark.parametrize("structure", ["darboux", "reflection"])
def test_jacobi_leibniz_antisymmetry(structure, rng):
    P = darboux_structure(2) if structure == "darboux" else reflection_structure(3)
    for _ in range(100):
        f = _random_poly(P, rng)
        g = _random_poly(P, rng)
        h = _random_poly(P, rng)
        br = lambda a, b: poisson_bracket(a, b, P)
        assert br(f, g) == -br(g, f)
        assert br(f * g, h) == f * br(g, h) + g * br(f, h)
        jac = br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g))
        assert not jac.terms


def test_degree_homogeneity(rng):
    P = darboux_structure(3)
    names = P.context.names
    for _ in range(30):
        e1 = tuple(rng.randint(0, 3) for _ in range(6))
        e2 = tuple(rng.randint(0, 3) for _ in range(6))
        m1 = SparsePolynomial.monomial(P.context, e1)
        m2 = SparsePolynomial.monomial(P.context, e2)
        b = poisson_bracket(m1, m2, P)
        if b.terms:
            assert b.is_homogeneous()
            assert b.degree() == sum(e1) + sum(e2) - 2


def test_reflection_sum_images_vanish():
    # the eliminated-coordinate images of sum x_i and sum y_i are zero
    from ptl.engine import _reflection_power_sum
    for n in (2, 3, 4):
        assert not _reflection_power_sum(n, 1, 0).terms
        assert not _reflection_power_sum(n, 0, 1).terms
        assert _reflection_power_sum(n, 2, 0).terms  # sum x_i^2 survives


def test_ad_h_acts_diagonally(rng):
    # {., H} scales each (x-degree, y-degree) bicomponent by xdeg - ydeg
    from ptl.weyl import GroupSpec, invariant_basis
    from ptl.poisson import sl2_generators
    cases = [(GroupSpec("hyperoctahedral", 2), darboux_structure(2)),
             (GroupSpec("symmetric-reflection", 3), reflection_structure(3))]
    for spec, P in cases:
        _, _, H = sl2_generators(P)
        m = P.pairs
        for degree in (2, 3, 4):
            for f in invariant_basis(spec, degree):
                out = poisson_bracket(f, H, P)
                expected = SparsePolynomial.zero(P.context)
                for expo, c in f.terms.items():
                    xdeg = sum(expo[:m])
                    ydeg = sum(expo[m:])
                    expected = expected + SparsePolynomial(
                        P.context, {expo: c * (xdeg - ydeg)})
                assert out == expected


def test_raw_bracket_matches_public(rng):
    P = darboux_structure(2)
    for _ in range(20):
        f = _random_poly(P, rng)
        g = _random_poly(P, rng)
        fd = {e: int(c) for e, c in f.terms.items()}
        gd = {e: int(c) for e, c in g.terms.items()}
        raw = raw_bracket(fd, gd, P)
        pub = poisson_bracket(f, g, P)
        assert {e: Fraction(c) for e, c in raw.items()} == dict(pub.terms)

    R = reflection_structure(3)
    for _ in range(10):
        f = _random_poly(R, rng)
        g = _random_poly(R, rng)
        fd = {e: int(c) for e, c in f.terms.items()}
        gd = {e: int(c) for e, c in g.terms.items()}
        raw = raw_bracket(fd, gd, R)  # scaled by n = 3
        pub = poisson_bracket(f, g, R) * 3
        assert {e: Fraction(c) for e, c in raw.items()} == dict(pub.terms)
