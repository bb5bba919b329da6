"""Matrices over Q[t], optionally carrying homogeneous (t,u) degrees.

An entry of a homogeneous matrix is stored dehomogenized (u = 1); its
(t,u)-degree is ``row_degrees[i] + col_degrees[j]``.  Minors of such a
matrix are homogeneous too, which is what lets us re-homogenize a minor
computed over Q[t] without losing powers of u.
"""
from fractions import Fraction

from . import kernels as K
from .poly import BiHomPoly, TU, UniPoly, ints_of, moebius_dehomogenized


def _sample_points(count):
    pts = [0]
    k = 1
    while len(pts) < count:
        pts.append(k)
        if len(pts) < count:
            pts.append(-k)
        k += 1
    return pts


def interpolate(xs, ys):
    """Newton interpolation through integer nodes; returns a UniPoly."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        poly = poly * UniPoly([-xs[i], 1]) + coef[i]
    return poly


def degree_bound(rows):
    """Min of the row-wise and column-wise sums of maximal entry degrees."""
    if not rows:
        return 0
    rsum = 0
    for row in rows:
        d = max(e.degree for e in row)
        if d < 0:
            return -1
        rsum += d
    csum = 0
    for col in zip(*rows):
        d = max(e.degree for e in col)
        if d < 0:
            return -1
        csum += d
    return min(rsum, csum)


def det_interpolation(rows):
    """Determinant of a square matrix of UniPoly by evaluation and interpolation."""
    n = len(rows)
    if n == 0:
        return UniPoly([1])
    bound = degree_bound(rows)
    if bound < 0:
        return UniPoly()
    int_rows_, scale = int_rows(rows)
    xs = _sample_points(bound + 1)
    ys = []
    for x in xs:
        m = [[K.evaluate(e, x, 1) for e in row] for row in int_rows_]
        ys.append(K.det(m))
    p = interpolate(xs, ys)
    return p / scale if scale != 1 else p


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class PolyMatrix:
    """Dense matrix with UniPoly entries.

    Parameters
    ----------
    rows : sequence of sequences of UniPoly
    tag : str
        Which construction produced the matrix (``"sylvester"``, ``"hybrid"``...).
    row_degrees, col_degrees : sequence of int, optional
        Homogeneous (t,u)-degree data; both or neither.
    """

    __slots__ = ("rows", "tag", "row_degrees", "col_degrees")

    def __init__(self, rows, tag="", row_degrees=None, col_degrees=None):
        self.rows = tuple(tuple(e if isinstance(e, UniPoly) else UniPoly([e]) for e in r)
                          for r in rows)
        if self.rows and any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ValueError("ragged matrix")
        self.tag = tag
        if (row_degrees is None) != (col_degrees is None):
            raise ValueError("give both row and column degrees or neither")
        if row_degrees is not None:
            row_degrees, col_degrees = tuple(row_degrees), tuple(col_degrees)
            if len(row_degrees) != self.nrows or len(col_degrees) != self.ncols:
                raise ValueError("degree data does not match the shape")
            for i, r in enumerate(self.rows):
                for j, e in enumerate(r):
                    if e.degree > row_degrees[i] + col_degrees[j]:
                        raise ValueError(
                            f"entry ({i},{j}) has degree {e.degree} above its homogeneous "
                            f"degree {row_degrees[i] + col_degrees[j]}")
        self.row_degrees = row_degrees
        self.col_degrees = col_degrees

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return self.nrows, self.ncols

    @property
    def is_homogeneous(self):
        return self.row_degrees is not None

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols}, tag={self.tag!r})"

    @classmethod
    def identity(cls, n):
        return cls([[UniPoly([1 if i == j else 0]) for j in range(n)] for i in range(n)],
                   tag="identity")

    @classmethod
    def diagonal(cls, entries):
        n = len(entries)
        return cls([[entries[i] if i == j else UniPoly() for j in range(n)] for i in range(n)],
                   tag="diagonal")

    def entry_degree(self, i, j):
        return self.row_degrees[i] + self.col_degrees[j]

    def transpose(self):
        return PolyMatrix(list(zip(*self.rows)), self.tag, self.col_degrees, self.row_degrees)

    def submatrix(self, rows, cols):
        return PolyMatrix([[self.rows[i][j] for j in cols] for i in rows], self.tag,
                          None if self.row_degrees is None else [self.row_degrees[i] for i in rows],
                          None if self.col_degrees is None else [self.col_degrees[j] for j in cols])

    def evaluate(self, t0):
        t0 = Fraction(t0)
        return [[e(t0) for e in r] for r in self.rows]

    def evaluate_form(self, t0, u0):
        """Evaluate the homogeneous entries at the point (t0 : u0)."""
        t0, u0 = Fraction(t0), Fraction(u0)
        out = []
        for i, r in enumerate(self.rows):
            row = []
            for j, e in enumerate(r):
                d = self.entry_degree(i, j)
                row.append(sum((c * t0 ** k * u0 ** (d - k) for k, c in enumerate(e.coeffs)),
                               Fraction(0)))
            out.append(row)
        return out

    def moebius(self, psi):
        """Substitute a change of (t,u) coordinates into every entry."""
        if not self.is_homogeneous:
            raise ValueError("a change of coordinates needs homogeneous degree data")
        rows = [[moebius_dehomogenized(e, self.entry_degree(i, j), psi)
                 for j, e in enumerate(r)] for i, r in enumerate(self.rows)]
        return PolyMatrix(rows, self.tag, self.row_degrees, self.col_degrees)

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return det_interpolation(self.rows)

    def minor(self, rows, cols):
        return det_interpolation([[self.rows[i][j] for j in cols] for i in rows])

    def homogeneous_minor(self, rows, cols):
        """The minor as a (t,u)-form of its full homogeneous degree."""
        d = sum(self.row_degrees[i] for i in rows) + sum(self.col_degrees[j] for j in cols)
        return BiHomPoly.homogenize(self.minor(rows, cols), d, TU)

    def homogeneous_det(self):
        return self.homogeneous_minor(range(self.nrows), range(self.ncols))

    def __mul__(self, other):
        """Product with another PolyMatrix or a constant matrix (list of rows)."""
        if isinstance(other, PolyMatrix):
            b = other.rows
            deg = None
        else:
            b = [[UniPoly([x]) for x in row] for row in other]
            deg = self.col_degrees
        if self.ncols != len(b):
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            row = []
            for col in zip(*b):
                acc = UniPoly()
                for x, y in zip(r, col):
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        if deg is not None and self.is_homogeneous and len(set(deg)) == 1:
            return PolyMatrix(out, self.tag, self.row_degrees, [deg[0]] * len(out[0]))
        return PolyMatrix(out, self.tag)

    def __rmul__(self, other):
        """Constant matrix on the left."""
        a = [[UniPoly([x]) for x in row] for row in other]
        out = []
        for r in a:
            row = []
            for col in zip(*self.rows):
                acc = UniPoly()
                for x, y in zip(r, col):
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        if self.is_homogeneous and len(set(self.row_degrees)) == 1:
            return PolyMatrix(out, self.tag, [self.row_degrees[0]] * len(out), self.col_degrees)
        return PolyMatrix(out, self.tag)

    def scale_entries(self, poly):
        return PolyMatrix([[e * poly for e in r] for r in self.rows], self.tag)

    def to_json(self):
        """Entry-wise ascending coefficient lists with rationals as strings."""
        doc = {
            "tag": self.tag,
            "shape": [self.nrows, self.ncols],
            "entries": [[[_rat_str(c) for c in e.coeffs] for e in r] for r in self.rows],
        }
        if self.is_homogeneous:
            doc["row_degrees"] = list(self.row_degrees)
            doc["col_degrees"] = list(self.col_degrees)
        return doc

    @classmethod
    def from_json(cls, doc):
        rows = [[UniPoly([Fraction(c) for c in e]) for e in r] for r in doc["entries"]]
        return cls(rows, doc.get("tag", ""), doc.get("row_degrees"), doc.get("col_degrees"))


def _rat_str(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def int_rows(rows):
    """Scale each row of UniPoly entries to integer coefficient lists.

    Returns ``(rows, scale)`` where ``scale`` is the product of the row
    multipliers, so ``det(original) == det(rows) / scale``.
    """
    out = []
    scale = 1
    for row in rows:
        den = 1
        parts = []
        for e in row:
            ints, d = ints_of(e.coeffs)
            parts.append((ints, d))
            den = den * d // _gcd(den, d)
        out.append([K.scale(i, den // d) if i else [] for i, d in parts])
        scale *= den
    return out, scale
