"""Exact linear algebra over Q on lists of rows of Fractions."""
from fractions import Fraction

from . import kernels as K
from .poly import ints_of


def as_fractions(m):
    return [[x if isinstance(x, Fraction) else Fraction(x) for x in row] for row in m]


def rref(m):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``.

    Pivots are chosen as the first nonzero entry down each column, which
    keeps the output deterministic.
    """
    a = as_fractions(m)
    if not a:
        return [], []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a[:r], pivots


def nullspace(m, ncols=None):
    """Basis of the right kernel in echelon form, one vector per free column."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    rows, pivots = rref(m)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def rank(m):
    if not m:
        return 0
    return K.rank([ints_of(as_fractions([row])[0])[0] for row in m])


def det(m):
    """Exact determinant of a square rational matrix."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    rows = []
    scale = 1
    for row in as_fractions(m):
        ints, den = ints_of(row)
        rows.append(ints)
        scale *= den
    return Fraction(K.det(rows), scale)


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def solve(a, b):
    """Solve ``a @ x == b`` exactly for a full-column-rank ``a``.

    ``b`` is a matrix (list of rows).  Raises ``ValueError`` if the system is
    inconsistent or underdetermined.
    """
    ncols = len(a[0])
    nb = len(b[0])
    aug = [list(ra) + list(rb) for ra, rb in zip(as_fractions(a), as_fractions(b))]
    rows, pivots = rref(aug)
    if any(p >= ncols for p in pivots):
        raise ValueError("inconsistent linear system")
    if len(pivots) < ncols:
        raise ValueError("linear system is underdetermined")
    x = [[Fraction(0)] * nb for _ in range(ncols)]
    for row, p in zip(rows, pivots):
        x[p] = row[ncols:]
    return x
