"""Forms in (s,v) whose coefficients are (t,u)-forms, plus resultant matrices.

A :class:`BiForm` of bidegree ``(sdeg, tdeg)`` stores, for each power of
s, the dehomogenized (u = 1) coefficient polynomial in t.
"""
import warnings
from fractions import Fraction

from .linalg import det as rat_det
from .matrix import PolyMatrix
from .poly import SV, TU, BiHomPoly, UniPoly, moebius_dehomogenized

_ZERO = UniPoly()


class BiForm:
    """Bihomogeneous form; ``coeffs[i]`` is the t-polynomial multiplying s^i v^(sdeg-i)."""

    __slots__ = ("sdeg", "tdeg", "coeffs")

    def __init__(self, sdeg, tdeg, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != sdeg + 1:
            raise ValueError(f"expected {sdeg + 1} coefficients, got {len(coeffs)}")
        for c in coeffs:
            if c.degree > tdeg:
                raise ValueError(f"coefficient of t-degree {c.degree} exceeds {tdeg}")
        self.sdeg = sdeg
        self.tdeg = tdeg
        self.coeffs = coeffs

    @classmethod
    def from_product(cls, sform, tform):
        """``sform(s,v) * tform(t,u)``."""
        tpoly = tform.dehomogenize()
        return cls(sform.degree, tform.degree, [tpoly * c for c in sform.coeffs])

    @classmethod
    def moving(cls, syzygy, params):
        """``sum_i syzygy[i](s,v) * params[i](t,u)``."""
        sdeg = syzygy[0].degree
        tdeg = params[0].degree
        tpolys = [f.dehomogenize() for f in params]
        coeffs = []
        for k in range(sdeg + 1):
            acc = UniPoly()
            for g, tp in zip(syzygy, tpolys):
                if g.coeffs[k]:
                    acc = acc + tp * g.coeffs[k]
            coeffs.append(acc)
        return cls(sdeg, tdeg, coeffs)

    def __add__(self, other):
        if (self.sdeg, self.tdeg) != (other.sdeg, other.tdeg):
            raise ValueError("bidegree mismatch")
        return BiForm(self.sdeg, self.tdeg, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return BiForm(self.sdeg, self.tdeg, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, BiForm) and (self.sdeg, self.tdeg, self.coeffs) == (
            other.sdeg, other.tdeg, other.coeffs)

    def __repr__(self):
        return f"BiForm(sdeg={self.sdeg}, tdeg={self.tdeg})"

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def at_t(self, t0, u0=1):
        """Specialize (t,u) to the point (t0 : u0); returns a form in (s,v)."""
        t0, u0 = Fraction(t0), Fraction(u0)
        d = self.tdeg
        vals = []
        for c in self.coeffs:
            vals.append(sum((x * t0 ** k * u0 ** (d - k) for k, x in enumerate(c.coeffs)),
                            Fraction(0)))
        return BiHomPoly(self.sdeg, vals, SV)

    def diagonal(self):
        """Restriction to s = t, v = u, as a (t,u)-form of degree sdeg + tdeg."""
        acc = UniPoly()
        for i, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * UniPoly.monomial(i)
        return BiHomPoly.homogenize(acc, self.sdeg + self.tdeg, TU)

    def divide_diagonal(self):
        """Exact quotient by ``s*u - t*v``; raises ArithmeticError otherwise."""
        if self.sdeg == 0 or self.tdeg == 0:
            if self.is_zero():
                return BiForm(max(self.sdeg - 1, 0), max(self.tdeg - 1, 0),
                              [_ZERO] * max(self.sdeg, 1))
            raise ArithmeticError("form is not divisible by s*u - t*v")
        t = UniPoly([0, 1])
        d = self.sdeg
        q = [None] * d
        q[d - 1] = self.coeffs[d]
        for k in range(d - 1, 0, -1):
            q[k - 1] = self.coeffs[k] + t * q[k]
        rem = self.coeffs[0] + t * q[0]
        if not rem.is_zero():
            raise ArithmeticError("form is not divisible by s*u - t*v")
        for c in q:
            if c.degree > self.tdeg - 1:
                raise ArithmeticError("form is not divisible by s*u - t*v")
        return BiForm(d - 1, self.tdeg - 1, q)

    def times_diagonal(self):
        """Multiply by ``s*u - t*v``."""
        t = UniPoly([0, 1])
        d = self.sdeg
        out = [UniPoly() for _ in range(d + 2)]
        for i, c in enumerate(self.coeffs):
            out[i + 1] = out[i + 1] + c
            out[i] = out[i] - t * c
        return BiForm(d + 1, self.tdeg + 1, out)

    def moebius_t(self, psi):
        """Change of (t,u) coordinates in the coefficients."""
        return BiForm(self.sdeg, self.tdeg,
                      [moebius_dehomogenized(c, self.tdeg, psi) for c in self.coeffs])

    def coefficient_form(self, i):
        return BiHomPoly.homogenize(self.coeffs[i], self.tdeg, TU)


# -- matrix builders -------------------------------------------------------

def sylvester_rows(f, df, g, dg, zero):
    """Sylvester matrix of two coefficient lists (ascending powers of s).

    Rows are indexed by s^(N-1), ..., s^0 with N = df + dg; the first dg
    columns hold s^k v^(dg-1-k) * f for k = 0..dg-1, the next df columns the
    shifts of g, lowest shift first.
    """
    n = df + dg
    rows = [[zero] * n for _ in range(n)]
    for k in range(dg):
        for e in range(df + 1):
            rows[n - 1 - (e + k)][k] = f[e]
    for k in range(df):
        for e in range(dg + 1):
            rows[n - 1 - (e + k)][dg + k] = g[e]
    return rows


def bezout_rows(f, g, n, zero):
    """Bezout matrix of two degree-n coefficient lists (formal degree n).

    Entry ``(i, j)`` is the coefficient of s^i x^j in
    ``(f(x) g(s) - f(s) g(x)) / (s - x)``.
    """
    rows = [[zero] * n for _ in range(n)]
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            c = f[i] * g[j] - f[j] * g[i]
            if not c:
                continue
            # the pair (i, j) contributes c * s^i x^i * sum_{k<j-i} s^k x^(j-i-1-k)
            for k in range(j - i):
                r, col = i + k, j - 1 - k
                rows[r][col] = rows[r][col] + c
    return rows


def sylvester_matrix(f, g, tag="sylvester"):
    """Sylvester matrix of two BiForms as a homogeneous PolyMatrix."""
    rows = sylvester_rows(f.coeffs, f.sdeg, g.coeffs, g.sdeg, _ZERO)
    n = f.sdeg + g.sdeg
    return PolyMatrix(rows, tag, [0] * n, [f.tdeg] * g.sdeg + [g.tdeg] * f.sdeg)


def bezout_matrix(f, g, tag="bezout"):
    if f.sdeg != g.sdeg:
        raise ValueError("a Bezout matrix needs two forms of the same degree")
    n = f.sdeg
    rows = bezout_rows(f.coeffs, g.coeffs, n, _ZERO)
    return PolyMatrix(rows, tag, [0] * n, [f.tdeg + g.tdeg] * n)


def resultant(f, g):
    """Sylvester resultant in (s,v).

    Two BiHomPoly give a Fraction; two BiForm give a (t,u)-form of degree
    ``deg g * tdeg f + deg f * tdeg g``.
    """
    if isinstance(f, BiHomPoly) and isinstance(g, BiHomPoly):
        if f.is_zero() or g.is_zero():
            warnings.warn("resultant with a zero polynomial", RuntimeWarning, stacklevel=2)
            return Fraction(0)
        rows = sylvester_rows(f.coeffs, f.degree, g.coeffs, g.degree, Fraction(0))
        if not rows:
            return Fraction(1)
        return rat_det(rows)
    if isinstance(f, BiForm) and isinstance(g, BiForm):
        total = g.sdeg * f.tdeg + f.sdeg * g.tdeg
        if f.is_zero() or g.is_zero():
            warnings.warn("resultant with a zero polynomial", RuntimeWarning, stacklevel=2)
            return BiHomPoly.zero(total, TU)
        if f.sdeg + g.sdeg == 0:
            return BiHomPoly.one(TU)
        return BiHomPoly.homogenize(sylvester_matrix(f, g).det(), total, TU)
    raise TypeError("resultant needs two BiHomPoly or two BiForm")


def subresultant_minor_indices(df, dg):
    """Rows and columns of the Sylvester matrix forming the first principal subresultant.

    Drops the rows of s^(N-1) and s^0 and the highest shift of each block,
    leaving an (N-2) x (N-2) minor.
    """
    n = df + dg
    if df < 1 or dg < 1:
        raise ValueError("both forms need positive degree")
    rows = list(range(1, n - 1))
    cols = [k for k in range(n) if k not in (dg - 1, n - 1)]
    return rows, cols


def first_principal_subresultant_minor(S, df, dg):
    """Principal coefficient of the first subresultant of a Sylvester matrix.

    ``S`` is laid out as in :func:`sylvester_rows` for forms of degrees df
    and dg.  Entries may be Fractions (list of rows) or a PolyMatrix.
    """
    n = df + dg
    if isinstance(S, PolyMatrix):
        if S.shape != (n, n):
            raise ValueError(f"expected a {n}x{n} Sylvester matrix, got {S.shape}")
        rows, cols = subresultant_minor_indices(df, dg)
        if not rows:
            return UniPoly([1])
        return S.minor(rows, cols)
    if len(S) != n or any(len(r) != n for r in S):
        raise ValueError(f"expected a {n}x{n} Sylvester matrix")
    rows, cols = subresultant_minor_indices(df, dg)
    return rat_det([[S[i][j] for j in cols] for i in rows]) if rows else Fraction(1)


def subresultant_prs_s1(f, g):
    """First subresultant S_1 of two univariate polynomials, via the classical PRS.

    Works over Q; returns the degree-<=1 polynomial S_1 with the standard
    determinantal normalization.  Used as an independent check of the
    Sylvester-minor path.
    """
    # determinantal definition through the subresultant matrix: rows are
    # x^(dg-2)f, ..., f, x^(df-2)g, ..., g in the basis x^(df+dg-2) .. x^0
    df, dg = f.degree, g.degree
    if df < 1 or dg < 1:
        raise ValueError("both polynomials need positive degree")
    m = df + dg - 2
    mat = []
    for k in range(dg - 2, -1, -1):
        mat.append([f.coeffs[e - k] if 0 <= e - k <= df else Fraction(0)
                    for e in range(m, -1, -1)])
    for k in range(df - 2, -1, -1):
        mat.append([g.coeffs[e - k] if 0 <= e - k <= dg else Fraction(0)
                    for e in range(m, -1, -1)])
    coeffs = []
    for i in (0, 1):
        cols = list(range(m - 1)) + [m - i]
        coeffs.append(rat_det([[row[c] for c in cols] for row in mat]) if mat else Fraction(1))
    return UniPoly(coeffs)
