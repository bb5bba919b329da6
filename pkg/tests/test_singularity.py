from fractions import Fraction

import pytest
from conftest import cusp, node, s, v

from curvesing.mubasis import Parameterization, compute_mu_basis
from curvesing.polycore.poly import TU, BiHomPoly, UniPoly, normalize_primitive
from curvesing.singularity import (DeltaError, RationalFunctionPair, SingularFactorSet,
                                   analyse, bezout_divisor_check, check_delta_product,
                                   d_resultant_general, d_resultant_same_denominator,
                                   delta_subresultant, form_squarefree, gcd_free_basis,
                                   rational_roots, reduced_singular_factors,
                                   stratification_report)

T = BiHomPoly.linear(1, 0, TU)
U = BiHomPoly.linear(0, 1, TU)
ONE = BiHomPoly.one(TU)
t = UniPoly([0, 1])


def norm(f):
    return normalize_primitive(f)


def test_delta_of_cubics():
    _, _, sf, d = analyse(cusp())
    assert d.delta == T * T
    assert check_delta_product(d, sf).passed
    assert analyse(node())[3].delta == norm(T * T - U * U)


def test_degree10_delta_degree(deg10_analysis):
    _, _, sf, d = deg10_analysis
    assert d.delta.degree == 72
    want = norm(sf.factors[6] ** 5 * sf.factors[5] ** 4 * sf.factors[4] ** 3
                * sf.factors[3] ** 2 * sf.factors[2])
    assert d.delta == want


def test_perturbed_factor_fails_with_witness():
    _, _, sf, d = analyse(cusp())
    bad = SingularFactorSet(3, 1, {2: T * (T + U), 3: ONE})
    res = check_delta_product(d, bad)
    assert not res.passed and "product" in res.witness


def test_delta_rejects_non_birational():
    phi = Parameterization(s ** 4, s * s * v * v, v ** 4)
    with pytest.raises(DeltaError):
        delta_subresultant(phi, compute_mu_basis(phi))


def test_reduction_loop():
    coprime = SingularFactorSet(4, 1, {2: T, 3: U, 4: ONE})
    assert reduced_singular_factors(coprime).reduced == coprime.factors
    nested = SingularFactorSet(5, 1, {2: ONE, 3: T, 4: T * T * U, 5: ONE})
    red = reduced_singular_factors(nested).reduced
    assert red[3] == ONE and red[4] == T * T * U


def test_squarefree_helpers():
    f = T * T * U * (T + U) ** 3
    parts = {str(p): e for p, e in form_squarefree(f)}
    assert parts == {"u": 1, "t": 2, "t + u": 3}
    atoms = gcd_free_basis([T * (T + U), (T + U) * U])
    assert set(map(str, atoms)) == {"t", "u", "t + u"}
    roots = rational_roots(norm(U * (2 * T + U) * (T * T + U * U)))
    assert set(roots) == {(Fraction(1), Fraction(0)), (Fraction(-1, 2), Fraction(1))}


def test_degree10_decomposition(deg10, deg10_analysis):
    basis, _, sf, d = deg10_analysis
    rep = stratification_report(deg10, basis, sf, d)
    dec = rep.decomposition
    sext = norm(BiHomPoly.homogenize(UniPoly([1, 6, 21, 48, 71, 74, 43]), 6, TU))
    assert dec.h[6] == norm((T + U) ** 6)
    assert dec.h[2] == sext
    assert dec.psi[(2, 6)] == norm((T + U) ** 6)
    assert all(dec.certified.values())
    assert rep.budget_ok and rep.genus_budget == 72
    mults = sorted(p.multiplicity for p in dec.points if p.point is not None)
    assert mults == [4, 6]
    assert rep.point_counts[2] == 6


def test_cubic_stratification():
    phi = node()
    basis, _, sf, d = analyse(phi)
    rep = stratification_report(phi, basis, sf, d)
    assert rep.decomposition.h[2] == norm(T * T - U * U)
    assert not rep.decomposition.psi
    [pt] = [p for p in rep.decomposition.points if p.point is not None]
    assert len(pt.parameters) == 2
    phi = cusp()
    basis, _, sf, d = analyse(phi)
    rep = stratification_report(phi, basis, sf, d)
    assert rep.budget_ok and not rep.infinitely_near


def test_approximate_roots():
    phi = node()
    basis, _, sf, d = analyse(phi)
    rep = stratification_report(phi, basis, sf, d, approx_roots=True)
    roots = sorted(z.real for row in rep.rows for z in row.roots)
    assert roots == pytest.approx([-1.0, 1.0])


def test_bezout_chain_cubics():
    for phi in (cusp(), node()):
        _, _, sf, _ = analyse(phi)
        checks = bezout_divisor_check(phi, sf)
        assert [c.name for c in checks] == ["bezout_D0", "bezout_D1", "bezout_D2"]
        assert all(c.passed for c in checks)


def test_same_denominator_cubics():
    for phi, d2 in ((cusp(), T * T), (node(), T * T - U * U)):
        _, _, sf, _ = analyse(phi)
        dres, check = d_resultant_same_denominator(phi, sf)
        assert dres == norm(U ** 6 * d2)
        assert check.passed


def test_same_denominator_degree10(deg10, deg10_analysis):
    _, _, sf, d = deg10_analysis
    dres, check = d_resultant_same_denominator(deg10, sf)
    c = deg10.c.with_varpair(TU)
    assert check.passed
    assert dres == norm(c ** 9 * d.delta)
    assert dres.degree == 9 * 10 + 72


def test_general_pair_structure():
    r = d_resultant_general(RationalFunctionPair(t * t, t - 1, t ** 3, t + 1))
    # numerator degrees pad the denominators with powers of u
    assert r.h == norm(T * U + U * U)
    assert r.q == norm(T - U)
    assert r.delta == U
    assert r.check.passed
    r = d_resultant_general(RationalFunctionPair(t * t + 1, (t - 1) * (t - 2), t * t + 3,
                                                 (t + 1) * (t - 2)))
    assert r.delta == norm(T - 2 * U) and r.check.passed


def test_general_pair_validation():
    with pytest.raises(ValueError):
        RationalFunctionPair(t * t - 1, t - 1, t, t + 2)
    with pytest.raises(ValueError):
        RationalFunctionPair(t, UniPoly(), t, t + 1)
