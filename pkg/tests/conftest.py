import random

import pytest

from curvesing.mubasis import Parameterization, ParameterizationError
from curvesing.polycore.matrix import PolyMatrix
from curvesing.polycore.poly import SV, BiHomPoly, UniPoly

s = BiHomPoly.linear(1, 0)
v = BiHomPoly.linear(0, 1)


def degree10_curve():
    return Parameterization(
        s**2 * (2 * s + v)**2 * (s + v)**6,
        s**3 * (2 * s + v)**5 * (3 * s * s + 2 * s * v + v * v),
        -(s + v)**10,
    )


def cusp():
    return Parameterization(s * s * v, s**3, v**3)


def node():
    return Parameterization(v * (s * s - v * v), s * (s * s - v * v), v**3)


def random_curve(rng, n, bound=5):
    """A random parameterization of degree n; redrawn until valid."""
    while True:
        forms = [BiHomPoly(n, [rng.randint(-bound, bound) for _ in range(n + 1)], SV)
                 for _ in range(3)]
        if any(f.coeffs[-1] == 0 and f.coeffs[0] == 0 for f in forms):
            continue
        try:
            return Parameterization(*forms)
        except ParameterizationError:
            continue


def random_curves(seed, count, degrees):
    rng = random.Random(seed)
    return [random_curve(rng, rng.choice(degrees)) for _ in range(count)]


def random_poly(rng, max_degree=3, bound=4, zero_rate=0.3):
    if rng.random() < zero_rate:
        return UniPoly()
    return UniPoly([rng.randint(-bound, bound) for _ in range(rng.randint(1, max_degree + 1))])


def random_poly_matrix(rng, nrows, ncols, max_degree=3):
    """Random matrix; some draws get a dependent last row so ranks vary."""
    rows = [[random_poly(rng, max_degree) for _ in range(ncols)] for _ in range(nrows)]
    if nrows > 1 and rng.random() < 0.3:
        rows[-1] = [rows[0][j] * UniPoly([1, 1]) + rows[1 % nrows][j] for j in range(ncols)]
    return PolyMatrix(rows)


@pytest.fixture(scope="session")
def deg10():
    return degree10_curve()


@pytest.fixture(scope="session")
def deg10_analysis(deg10):
    from curvesing.singularity import analyse
    return analyse(deg10)
