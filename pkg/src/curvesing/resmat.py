"""Resultant-type matrices of a parameterization and its mu-basis.

Row order is always s^(N-1), ..., s^0; shifted copies of a form go from
the lowest shift to the highest.
"""
from dataclasses import dataclass
from fractions import Fraction

from .polycore.forms import BiForm, bezout_matrix, bezout_rows, sylvester_matrix, sylvester_rows
from .polycore.linalg import det as rat_det
from .polycore.linalg import solve
from .polycore.matrix import PolyMatrix
from .polycore.poly import UniPoly


class ResmatError(ArithmeticError):
    """A structural identity of the construction failed."""


@dataclass(frozen=True)
class MovingForms:
    """p_phi and q_phi: the mu-basis syzygies evaluated on the parameterization."""

    p_phi: BiForm
    q_phi: BiForm
    n: int
    mu: int


@dataclass(frozen=True)
class DiagonalQuotients:
    F: BiForm
    G: BiForm
    P: BiForm
    Q: BiForm


def build_moving_forms(phi, basis):
    """Moving forms of a mu-basis; both are checked to vanish on su = tv."""
    p_phi = BiForm.moving(basis.p, phi.forms)
    q_phi = BiForm.moving(basis.q, phi.forms)
    for name, f in (("p_phi", p_phi), ("q_phi", q_phi)):
        try:
            f.divide_diagonal()
        except ArithmeticError as exc:
            raise ResmatError(f"{name} is not divisible by su - tv; invalid basis") from exc
    return MovingForms(p_phi, q_phi, phi.n, basis.mu)


def build_sylvester(moving):
    """n x n Sylvester matrix: n - mu shifts of p_phi, then mu shifts of q_phi."""
    return sylvester_matrix(moving.p_phi, moving.q_phi, tag="sylvester")


def truncations(f, g, k):
    """(f_k, g_k) for the hybrid construction.

    With m = deg g, f_k and g_k keep the coefficients of index >= m - k,
    shifted down by m - k.
    """
    m = g.sdeg
    lo = m - k
    fk = list(f.coeffs[lo:])
    gk = list(g.coeffs[lo:])
    return fk, gk


def _mul_coeffs(a, b):
    out = [UniPoly() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def hybrid_column(f, g, k):
    """Coefficients (ascending in s) of p_k = g_k f - f_k g, of s-degree < deg f."""
    fk, gk = truncations(f, g, k)
    a = _mul_coeffs(gk, list(f.coeffs))
    b = _mul_coeffs(fk, list(g.coeffs))
    size = max(len(a), len(b))
    a += [UniPoly()] * (size - len(a))
    b += [UniPoly()] * (size - len(b))
    diff = [x - y for x, y in zip(a, b)]
    n = f.sdeg
    if any(not c.is_zero() for c in diff[n:]):
        raise ResmatError(f"p_{k} has s-degree >= {n}")
    return diff[:n]


def build_hybrid(f, g, j):
    """Matrix of the map psi_j for forms f (degree N) and g (degree m <= N).

    Columns: p_(m-j), ..., p_(m-1), then m - j shifts of f, then N - j shifts
    of g.  The size is (m + N - j) square.  j = 0 is a Sylvester matrix and
    j = m the hybrid Bezout matrix.
    """
    n, m = f.sdeg, g.sdeg
    if m > n:
        raise ValueError("need deg f >= deg g")
    if not 0 <= j <= m:
        raise ValueError(f"j={j} out of range 0..{m}")
    size = m + n - j
    cols = []
    col_deg = []
    for k in range(m - j, m):
        c = hybrid_column(f, g, k)
        cols.append(c + [UniPoly()] * (size - len(c)))
        col_deg.append(f.tdeg + g.tdeg)
    for shift in range(m - j):
        c = [UniPoly()] * shift + list(f.coeffs)
        cols.append(c + [UniPoly()] * (size - len(c)))
        col_deg.append(f.tdeg)
    for shift in range(n - j):
        c = [UniPoly()] * shift + list(g.coeffs)
        cols.append(c + [UniPoly()] * (size - len(c)))
        col_deg.append(g.tdeg)
    rows = [[cols[c][e] for c in range(size)] for e in range(size - 1, -1, -1)]
    return PolyMatrix(rows, f"hybrid_{j}", [0] * size, col_deg)


def hybrid_family(moving):
    """psi_j matrices for j = 0..mu with f = q_phi, g = p_phi."""
    return [build_hybrid(moving.q_phi, moving.p_phi, j) for j in range(moving.mu + 1)]


def diagonal_quotients(phi):
    """F = a(s,v)c(t,u) - a(t,u)c(s,v), G likewise with b, and their quotients by su - tv."""
    a, b, c = phi.forms
    F = BiForm.from_product(a, c) - BiForm.from_product(c, a)
    G = BiForm.from_product(b, c) - BiForm.from_product(c, b)
    try:
        P = F.divide_diagonal()
        Q = G.divide_diagonal()
    except ArithmeticError as exc:
        raise ResmatError("nonzero remainder dividing by su - tv") from exc
    return DiagonalQuotients(F, G, P, Q)


def build_bezout_FG(phi):
    """n x n Bezout matrix in (s,v) of F and G, entries of (t,u)-degree 2n."""
    dq = diagonal_quotients(phi)
    return bezout_matrix(dq.F, dq.G, tag="bezout_FG")


# -- symbolic Bezout -------------------------------------------------------

@dataclass(frozen=True)
class SymbolicBezout:
    """B(x) = x3 * (x1*A1 + x2*A2 + x3*A3) = x3 * N * S(x).

    ``A`` and ``S`` hold the three coefficient matrices (for x1, x2, x3) of
    the quotient and of the Sylvester matrix of the mu-basis.  The rows of
    ``S`` are flipped to ascending powers of s, matching the Bezout rows.
    """

    A: tuple
    S: tuple
    N: list

    def at(self, x):
        n = len(self.N)
        return [[sum(xi * m[i][j] for xi, m in zip(x, self.A)) * x[2] for j in range(n)]
                for i in range(n)]


def build_symbolic_bezout(phi, basis):
    """Bezout matrix of a*x3 - c*x1 and b*x3 - c*x2, divided by x3, and its factor N.

    Raises
    ------
    ResmatError
        If an entry is not divisible by x3 or N is singular.
    """
    a, b, c = phi.forms
    n = phi.n
    # coefficient of s^i as a linear form (x1, x2, x3)
    f = [(-c.coeffs[i], Fraction(0), a.coeffs[i]) for i in range(n + 1)]
    g = [(Fraction(0), -c.coeffs[i], b.coeffs[i]) for i in range(n + 1)]
    quad = bezout_rows([_Lin(x) for x in f], [_Lin(x) for x in g], n, _Quad.zero())
    A = [[[Fraction(0)] * n for _ in range(n)] for _ in range(3)]
    for i in range(n):
        for j in range(n):
            q = quad[i][j]
            if not isinstance(q, _Quad):
                continue
            for key in ((0, 0), (0, 1), (1, 1)):
                if q.c.get(key):
                    raise ResmatError("symbolic Bezout entry not divisible by x3")
            A[0][i][j] = q.c.get((0, 2), Fraction(0))
            A[1][i][j] = q.c.get((1, 2), Fraction(0))
            A[2][i][j] = q.c.get((2, 2), Fraction(0))
    S = []
    for k in range(3):
        pk, qk = basis.p[k], basis.q[k]
        rows = sylvester_rows(pk.coeffs, pk.degree, qk.coeffs, qk.degree, Fraction(0))
        S.append(rows[::-1])
    # solve A_k = S_k N for all k at once: stack the S_k and A_k vertically
    big_s = [row for k in range(3) for row in S[k]]
    big_a = [row for k in range(3) for row in A[k]]
    try:
        N = solve(big_s, big_a)
    except ValueError as exc:
        raise ResmatError("no constant matrix N with B = x3*N*S") from exc
    if rat_det(N) == 0:
        raise ResmatError("N is singular; gcd(a, b, c) may not be 1")
    return SymbolicBezout(tuple(A), tuple(S), N)


class _Lin:
    """Linear form in (x1, x2, x3)."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = tuple(v)

    def __mul__(self, other):
        c = {}
        for i, x in enumerate(self.v):
            if not x:
                continue
            for j, y in enumerate(other.v):
                if y:
                    key = (min(i, j), max(i, j))
                    c[key] = c.get(key, 0) + x * y
        return _Quad(c)

    def __bool__(self):
        return any(self.v)


class _Quad:
    """Quadratic form in (x1, x2, x3) as {(i, j): coeff} with i <= j."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = {k: v for k, v in c.items() if v}

    @classmethod
    def zero(cls):
        return cls({})

    def __add__(self, other):
        c = dict(self.c)
        for k, v in other.c.items():
            c[k] = c.get(k, 0) + v
        return _Quad(c)

    def __sub__(self, other):
        c = dict(self.c)
        for k, v in other.c.items():
            c[k] = c.get(k, 0) - v
        return _Quad(c)

    def __bool__(self):
        return bool(self.c)


def symbolic_bezout_specialization(sb, phi):
    """B(a(t), b(t), c(t)) as a PolyMatrix over Q[t] (u = 1)."""
    polys = [f.dehomogenize() for f in phi.forms]
    n = len(sb.N)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = UniPoly()
            for x, m in zip(polys, sb.A):
                if m[i][j]:
                    acc = acc + x * m[i][j]
            row.append(acc * polys[2])
        rows.append(row)
    return PolyMatrix(rows, "symbolic_bezout")
