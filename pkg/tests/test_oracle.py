import random

import pytest
from conftest import cusp, degree10_curve, random_poly, random_poly_matrix

from curvesing.mubasis import compute_mu_basis
from curvesing.oracle import (OracleConfig, bareiss_poly_det, corank_at_parameter,
                              delta_via_diagonal_resultant, minor_gcd_chain,
                              thompson_divisibility_probe)
from curvesing.polycore.matrix import PolyMatrix
from curvesing.polycore.poly import UniPoly, normalize_primitive
from curvesing.resmat import build_moving_forms, build_sylvester
from curvesing.singularity import delta_subresultant
from curvesing.smithlab import EnumerationGuardError, chain_from_smith, smith_normal_form

t = UniPoly([0, 1])
ONE = UniPoly([1])


def norm(f):
    return f if f.is_zero() else normalize_primitive(f)


def sylvester(phi):
    b = compute_mu_basis(phi)
    return build_sylvester(build_moving_forms(phi, b)), b


def test_bareiss():
    assert bareiss_poly_det([[[1, 1], [2]], [[3], [0, 1]]]) == [-6, 1, 1]
    assert bareiss_poly_det([[[0, 1], [0, 2]], [[0, 3], [0, 6]]]) == []


def test_minor_chain_identity_and_guard():
    I = PolyMatrix.identity(3)
    assert minor_gcd_chain(I).D == [ONE] * 4
    with pytest.raises(EnumerationGuardError):
        minor_gcd_chain(PolyMatrix.identity(4), OracleConfig(max_enum_size=3))
    with pytest.raises(ValueError):
        OracleConfig(max_enum_size=1)


def test_minor_chain_rank_deficient_product():
    rng = random.Random(2)
    A = PolyMatrix([[random_poly(rng, zero_rate=0) for _ in range(2)] for _ in range(4)])
    B = PolyMatrix([[random_poly(rng, zero_rate=0) for _ in range(4)] for _ in range(2)])
    D = minor_gcd_chain(A * B).D
    assert not D[2].is_zero() and D[3].is_zero() and D[4].is_zero()


def test_agrees_with_snf_on_4x4():
    rng = random.Random(44)
    for _ in range(100):
        A = random_poly_matrix(rng, 4, 4, max_degree=2)
        assert ([norm(x) for x in chain_from_smith(smith_normal_form(A)).D]
                == [norm(x) for x in minor_gcd_chain(A).D])


def test_corank():
    S, _ = sylvester(degree10_curve())
    assert corank_at_parameter(S, -1) == 6
    assert corank_at_parameter(S, 7) == 1
    C, _ = sylvester(cusp())
    assert corank_at_parameter(C, 0) == 2


def test_thompson_probe():
    I = PolyMatrix.identity(3)
    assert thompson_divisibility_probe(I, I)
    rng = random.Random(7)
    for _ in range(10):
        A = PolyMatrix.diagonal([random_poly(rng, zero_rate=0) for _ in range(3)])
        B = PolyMatrix.diagonal([random_poly(rng, zero_rate=0) for _ in range(3)])
        assert thompson_divisibility_probe(A, B)
    with pytest.raises(ValueError):
        thompson_divisibility_probe(I, PolyMatrix.identity(2))


def test_delta_two_paths():
    phi = cusp()
    _, b = sylvester(phi)
    assert delta_via_diagonal_resultant(phi, b) == t * t
    phi = degree10_curve()
    _, b = sylvester(phi)
    assert delta_via_diagonal_resultant(phi, b, homogeneous=True) == \
        delta_subresultant(phi, b).delta
