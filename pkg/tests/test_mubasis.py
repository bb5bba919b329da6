import random
from fractions import Fraction

import pytest
from conftest import cusp, degree10_curve, node, random_curve, s, v

from curvesing.mubasis import (MuBasis, Parameterization, ParameterizationError, PointP2,
                               TernaryForm, compute_mu_basis, h_invariant, hilbert_burch,
                               implicit_equation, multiplicity_range_check, same_module,
                               validate_mu_basis)
from curvesing.polycore.poly import BiHomPoly, same_up_to_scalar


def test_parameterization_validation():
    with pytest.raises(ParameterizationError, match="gcd"):
        Parameterization(s ** 3, s * s * v, s * v * v)
    with pytest.raises(ParameterizationError, match="degree"):
        Parameterization(s * s, v * v, s * v)
    with pytest.raises(ParameterizationError):
        Parameterization(s ** 3, v ** 2, s * v * v)


def test_cusp_basis():
    b = compute_mu_basis(cusp())
    assert b.mu == 1
    # p = (s, -v, 0) and q = (v^2, 0, -s^2), each up to one scalar
    c = b.p[0].coeffs[1]
    assert c and b.p == (s * c, -v * c, BiHomPoly.zero(1))
    e = b.q[0].coeffs[0]
    assert e and b.q == (v * v * e, BiHomPoly.zero(2), -s * s * e)
    assert validate_mu_basis(cusp(), b).ok


def test_degree10_basis_matches_reference_module():
    phi = degree10_curve()
    b = compute_mu_basis(phi)
    assert b.mu == 4
    p = ((s + v) ** 4, BiHomPoly.zero(4), s * s * (2 * s + v) ** 2)
    q = (s * (3 * s * s + 2 * s * v + v * v) * (2 * s + v) ** 3, -(s + v) ** 6,
         BiHomPoly.zero(6))
    ref = MuBasis(p, q, 4)
    assert validate_mu_basis(phi, ref).ok
    assert same_module(b, ref)


def test_validate_accepts_basis_change_and_rejects_perturbation():
    phi = node()
    b = compute_mu_basis(phi)
    assert b.mu == 1
    shifted = tuple(qi + s * pi for qi, pi in zip(b.q, b.p))
    assert validate_mu_basis(phi, MuBasis(b.p, shifted, 1)).ok
    bad_p = (b.p[0] + s, b.p[1], b.p[2])
    rep = validate_mu_basis(phi, MuBasis(bad_p, b.q, 1))
    assert not rep.ok and not rep.syzygy_p


def test_hilbert_burch_minors():
    phi = cusp()
    b = compute_mu_basis(phi)
    minors = hilbert_burch(b.p, b.q)
    c = minors[0].coeffs[-1] / phi.a.coeffs[-1] if phi.a.coeffs[-1] else None
    scalars = {m.coeffs[i] / f.coeffs[i] for m, f in zip(minors, phi.forms)
               for i in range(len(f.coeffs)) if f.coeffs[i]}
    assert len(scalars) == 1
    assert c is None or c in scalars


def test_random_bases_validate():
    rng = random.Random(11)
    for _ in range(5):
        phi = random_curve(rng, 5)
        b = compute_mu_basis(phi)
        assert b.mu <= phi.n - b.mu
        assert validate_mu_basis(phi, b).ok


def test_cusp_implicit_equation():
    eq = implicit_equation(compute_mu_basis(cusp()))
    assert eq == TernaryForm(3, {(3, 0, 0): 1, (0, 2, 1): -1}).normalized()


def test_implicit_equation_vanishes_on_curve():
    phi = degree10_curve()
    eq = implicit_equation(compute_mu_basis(phi))
    assert eq.degree == 10
    rng = random.Random(3)
    for _ in range(5):
        t0 = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        assert eq(*phi(t0)) == 0
    assert eq(1, 2, 3) != 0


def test_h_invariant_on_cusp():
    phi = cusp()
    b = compute_mu_basis(phi)
    assert h_invariant(phi, b, PointP2(0, 0, 1)).degree == 2
    assert same_up_to_scalar(h_invariant(phi, b, PointP2(0, 0, 1)), s * s)
    # (1:1:1) is the image of (1:1); use a point off the cubic
    assert phi(1, 1) == PointP2(1, 1, 1)
    assert h_invariant(phi, b, PointP2(1, 2, 3)).degree == 0
    assert same_up_to_scalar(h_invariant(phi, b, PointP2(1, 1, 1)), s - v)


def test_multiplicity_range():
    phi = degree10_curve()
    b = compute_mu_basis(phi)
    for t0 in (-1, 0, Fraction(-1, 2), 3):
        assert multiplicity_range_check(phi, b, phi(t0))
    assert h_invariant(phi, b, phi(-1)).degree == 6


def test_non_birational_is_flagged():
    phi = Parameterization(s ** 4, s * s * v * v, v ** 4)
    b = compute_mu_basis(phi)
    # a generic image point has two preimages, so H has degree 2 instead of 1
    assert b.mu == 2
    for t0 in (2, 3, Fraction(1, 5)):
        assert h_invariant(phi, b, phi(t0)).degree == 2


def test_point_equality_is_projective():
    assert PointP2(1, 2, 3) == PointP2(-2, -4, -6)
    assert hash(PointP2(1, 2, 3)) == hash(PointP2(2, 4, 6))
    with pytest.raises(ValueError):
        PointP2(0, 0, 0)
