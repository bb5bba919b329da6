import random

import pytest
from conftest import cusp, degree10_curve, node, random_curves, random_poly_matrix
from hypothesis import given, settings
from hypothesis import strategies as st

from curvesing.mubasis import Parameterization, compute_mu_basis
from curvesing.oracle import minor_gcd_chain
from curvesing.polycore.matrix import PolyMatrix
from curvesing.polycore.poly import TU, BiHomPoly, MoebiusChange, UniPoly, normalize_primitive
from curvesing.resmat import build_moving_forms, build_sylvester
from curvesing.smithlab import (CoefficientBudgetError, EnumerationGuardError,
                                SingularFactorError, chain_from_smith, chart_invariant_factors,
                                determinantal_divisors, factors_from_diag, fitting_support_check,
                                homogeneous_divisor_chain, moebius_invariant_factors,
                                singular_factors, smith_normal_form)
from curvesing.singularity import delta_subresultant

t = UniPoly([0, 1])


def norm(f):
    return f if f.is_zero() else normalize_primitive(f)


def sylvester(phi):
    b = compute_mu_basis(phi)
    return build_sylvester(build_moving_forms(phi, b)), b


def test_diagonal_example():
    A = PolyMatrix([[t * t, UniPoly()], [UniPoly(), t]])
    assert smith_normal_form(A).diag == [t, t * t]


def test_transforms_reproduce_diagonal():
    rng = random.Random(21)
    for _ in range(20):
        A = random_poly_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        sf = smith_normal_form(A, keep_transforms=True)
        D = sf.left * A * sf.right
        for i in range(A.nrows):
            for j in range(A.ncols):
                want = sf.diag[i] if i == j and i < len(sf.diag) else UniPoly()
                assert D[i, j] == want
        assert sf.left.det().degree == 0 and sf.right.det().degree == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_snf_matches_minor_enumeration(seed):
    rng = random.Random(seed)
    A = random_poly_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), max_degree=2)
    sf = smith_normal_form(A)
    for a, b in zip(sf.diag, sf.diag[1:]):
        if not b.is_zero():
            assert a.divides(b)
    assert [norm(x) for x in chain_from_smith(sf).D] == [norm(x) for x in minor_gcd_chain(A).D]


def test_budget_error():
    phi = degree10_curve()
    S, _ = sylvester(phi)
    with pytest.raises(CoefficientBudgetError):
        smith_normal_form(S.moebius(MoebiusChange(3, -2, 2, 3)), max_bits=16)


def test_enumeration_guard():
    S, _ = sylvester(degree10_curve())
    with pytest.raises(EnumerationGuardError):
        determinantal_divisors(S)
    D = determinantal_divisors(S, sizes=[1])
    assert D.D[1].degree == 0 and D.D[2] is None


def test_factors_from_diag_requires_corank_one():
    one = UniPoly([1])
    with pytest.raises(SingularFactorError):
        factors_from_diag([one, one, one], 3)
    out = factors_from_diag([one, t * t, UniPoly()], 3)
    assert out == {2: t * t, 3: one}


def test_cusp_and_node_factors():
    S, b = sylvester(cusp())
    sf = singular_factors(S, 3, b.mu)
    tt = BiHomPoly.linear(1, 0, TU)
    uu = BiHomPoly.linear(0, 1, TU)
    assert sf.factors[2] == tt * tt and sf.factors[3].degree == 0
    S, b = sylvester(node())
    sf = singular_factors(S, 3, b.mu)
    assert sf.factors[2] == norm((tt - uu) * (tt + uu))


def test_root_at_infinity_is_kept():
    # the cusp moved to the parameter (1 : 0)
    s = BiHomPoly.linear(1, 0)
    v = BiHomPoly.linear(0, 1)
    phi = Parameterization(s * v * v, v ** 3, s ** 3)
    S, b = sylvester(phi)
    uu = BiHomPoly.linear(0, 1, TU)
    assert singular_factors(S, 3, b.mu).factors[2] == uu * uu
    assert singular_factors(S, 3, b.mu, seed=5).factors[2] == uu * uu


def test_charts_and_seeds_agree():
    for phi in [degree10_curve(), cusp(), node()] + random_curves(3, 5, (4, 5)):
        S, b = sylvester(phi)
        base = singular_factors(S, phi.n, b.mu).factors
        for seed in (0, 3):
            assert singular_factors(S, phi.n, b.mu, seed=seed).factors == base


def test_explicit_psi_and_rank_drop_at_infinity():
    S, b = sylvester(cusp())
    forms = moebius_invariant_factors(S, MoebiusChange(2, 1, 1, 1))
    assert forms == chart_invariant_factors(S)
    # psi sending the cusp parameter (0 : 1) to infinity
    assert moebius_invariant_factors(S, MoebiusChange(0, 1, 1, 0)) is None
    with pytest.raises(SingularFactorError):
        singular_factors(S, 3, b.mu, psi=MoebiusChange(0, 1, 1, 0))


def test_homogeneous_chain_and_fitting():
    phi = degree10_curve()
    S, b = sylvester(phi)
    chain = homogeneous_divisor_chain(S)
    delta = delta_subresultant(phi, b, S).delta
    assert chain.D[10].is_zero()
    assert chain.D[9] == delta
    assert fitting_support_check(S, b, delta).ok


def test_non_birational_raises():
    s = BiHomPoly.linear(1, 0)
    v = BiHomPoly.linear(0, 1)
    phi = Parameterization(s ** 4, s * s * v * v, v ** 4)
    S, b = sylvester(phi)
    with pytest.raises(SingularFactorError):
        singular_factors(S, 4, b.mu)
