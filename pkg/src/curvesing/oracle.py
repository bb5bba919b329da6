"""Brute-force verifiers, deliberately built on different algorithms than the fast path."""
from dataclasses import dataclass
from itertools import combinations

from .polycore import kernels as K
from .polycore.forms import resultant
from .polycore.linalg import rank
from .polycore.matrix import int_rows
from .polycore.poly import UniPoly, normalize_primitive, poly_gcd_many
from .resmat import build_moving_forms
from .smithlab import DivisorChain, EnumerationGuardError, smith_normal_form


@dataclass(frozen=True)
class OracleConfig:
    max_enum_size: int = 8
    sample_count: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.max_enum_size < 2:
            raise ValueError("max_enum_size must be at least 2")


def bareiss_poly_det(rows):
    """Fraction-free Bareiss elimination over Z[t] on integer coefficient lists."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return [1]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return []
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = K.sub(K.mul(a[k][k], a[i][j]), K.mul(a[i][k], a[k][j]))
                a[i][j] = K.divexact(num, prev) if num else []
            a[i][k] = []
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return K.scale(det, sign) if det else []


def _det_of(rows):
    ints, scale = int_rows(rows)
    d = bareiss_poly_det(ints)
    return UniPoly.from_ints(d, scale) if d else UniPoly()


def minor_gcd_chain(A, config=OracleConfig()):
    """D[i] = monic gcd of all i x i minors, by raw enumeration and Bareiss."""
    if max(A.nrows, A.ncols) > config.max_enum_size:
        raise EnumerationGuardError(
            f"{A.nrows}x{A.ncols} exceeds the oracle guard {config.max_enum_size}")
    r = min(A.nrows, A.ncols)
    D = [UniPoly([1])]
    for k in range(1, r + 1):
        minors = (_det_of([[A.rows[i][j] for j in cols] for i in rows])
                  for rows in combinations(range(A.nrows), k)
                  for cols in combinations(range(A.ncols), k))
        D.append(poly_gcd_many(minors))
    return DivisorChain(D)


def corank_at_parameter(S, t0):
    """Rank deficiency of S(t0) over Q (number of columns minus rank)."""
    return S.ncols - rank(S.evaluate(t0))


def _divides(a, b):
    if b.is_zero():
        return True
    if a.is_zero():
        return False
    return a.divides(b)


def _prod(polys):
    acc = UniPoly([1])
    for p in polys:
        acc = acc * p
    return acc


def thompson_divisibility_probe(A, B):
    """Invariant-factor divisibilities of a product for index tuples of length 1 and 2.

    With invariant factors alpha (of A), beta (of B) and gamma (of AB),
    alpha_i1..alpha_im beta_j1..beta_jm divides
    gamma_(i1+j1-1)..gamma_(im+jm-m) whenever i_m + j_m <= m + size.
    """
    if A.shape != B.shape or A.nrows != A.ncols:
        raise ValueError("need square matrices of the same size")
    n = A.nrows
    al = smith_normal_form(A).diag
    be = smith_normal_form(B).diag
    ga = smith_normal_form(A * B).diag
    for m in (1, 2):
        for ii in combinations(range(1, n + 1), m):
            for jj in combinations(range(1, n + 1), m):
                if ii[-1] + jj[-1] > m + n:
                    continue
                lhs = _prod([al[i - 1] for i in ii] + [be[j - 1] for j in jj])
                idx = [i + j - 1 - h for h, (i, j) in enumerate(zip(ii, jj))]
                rhs = _prod([ga[x - 1] for x in idx])
                if not _divides(lhs, rhs):
                    return False
    return True


def delta_via_diagonal_resultant(phi, basis, homogeneous=False):
    """Res_(s,v) of p_phi/(su-tv) and q_phi/(su-tv).

    Returns Delta(t,1) as a UniPoly, or the (t,u)-form with ``homogeneous``.
    """
    mf = build_moving_forms(phi, basis)
    P = mf.p_phi.divide_diagonal()
    Q = mf.q_phi.divide_diagonal()
    res = resultant(P, Q)
    if homogeneous:
        return normalize_primitive(res) if not res.is_zero() else res
    aff = res.dehomogenize()
    return normalize_primitive(aff) if not aff.is_zero() else aff
