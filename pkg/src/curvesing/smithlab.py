"""Smith normal form over Q[t], determinantal divisors and singular factors."""
import random
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd

from .polycore import kernels as K
from .polycore.linalg import rank
from .polycore.matrix import PolyMatrix, int_rows
from .polycore.poly import (TU, BiHomPoly, MoebiusChange, UniPoly, apply_moebius,
                            bihom_gcd_many, normalize_primitive, poly_gcd_many)


class SingularFactorError(ArithmeticError):
    """The singular factors could not be certified."""


class CoefficientBudgetError(ArithmeticError):
    """Intermediate coefficients outgrew the requested bit budget."""


class EnumerationGuardError(ValueError):
    """Minor enumeration requested on a matrix above the size guard."""


@dataclass
class SmithForm:
    """Monic invariant factors in divisibility order, zeros last.

    ``left`` and ``right`` (PolyMatrix) are kept only on request and satisfy
    ``left * A * right == diag``.
    """

    diag: list
    left: PolyMatrix = None
    right: PolyMatrix = None

    @property
    def rank(self):
        return sum(1 for d in self.diag if not d.is_zero())


@dataclass
class DivisorChain:
    """``D[i]`` is the gcd of the i x i minors; ``D[0] = 1``."""

    D: list


@dataclass
class SingularFactorSet:
    n: int
    mu: int
    factors: dict
    reduced: dict = field(default_factory=dict)
    psi: MoebiusChange = None
    seed: int = None

    def delta_product(self):
        acc = BiHomPoly.one(TU)
        for k, d in sorted(self.factors.items()):
            acc = acc * d ** (k - 1)
        return acc

    def degree_sum(self):
        return sum((k - 1) * d.degree for k, d in self.factors.items())


# -- Smith normal form -----------------------------------------------------

def _height(p):
    return max(abs(c).bit_length() for c in p)


def _divides(a, b):
    """Whether a | b over Q[t] for integer polynomials, a nonzero."""
    if not b:
        return True
    if len(a) == 1:
        return True
    return not K.pseudo_divmod(b, a)[1]


class _Tracker:
    """Row or column operations replayed on a rational transform matrix."""

    def __init__(self, n):
        self.m = [[UniPoly([1 if i == j else 0]) for j in range(n)] for i in range(n)]

    def swap(self, i, j):
        self.m[i], self.m[j] = self.m[j], self.m[i]

    def combine(self, i, c, q, k):
        """row_i <- c * row_i - q * row_k."""
        qp = UniPoly.from_ints(q)
        self.m[i] = [x * c - qp * y for x, y in zip(self.m[i], self.m[k])]

    def add(self, i, k):
        self.m[i] = [x + y for x, y in zip(self.m[i], self.m[k])]

    def divide(self, i, c):
        self.m[i] = [x / c for x in self.m[i]]


def _content_of_line(line):
    g = 0
    for p in line:
        for c in p:
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


def _reduced_quotient(x, piv):
    """(c, q, r) with c*x = q*piv + r, c > 0 as small as the quotient allows."""
    q, r, e = K.pseudo_divmod(x, piv)
    c = abs(piv[-1]) ** e
    if piv[-1] < 0 and e % 2:
        q, r = K.scale(q, -1), K.scale(r, -1)
    g = gcd(c, K.content(q)) if q else c
    if g > 1:
        c //= g
        q = K.divexact(q, [g])
        r = K.divexact(r, [g]) if r else r
    return c, q, r


def _make_primitive(lines, i, tracker, ti):
    g = _content_of_line(lines[i])
    if g > 1:
        lines[i] = [K.divexact(p, [g]) if p else p for p in lines[i]]
        if tracker:
            tracker.divide(ti, g)


def _clear_pair(lines, k, i, tracker, idx=None):
    """Reduce the pivot-column entry of line i by the pivot line k.

    ``lines`` holds rows (or two columns, with ``idx`` giving the matrix
    indices of the pivot and the target).  Returns the largest coefficient
    bit length in the updated line.
    """
    tk, ti = idx if idx is not None else (k, i)
    pos = k if idx is None else idx[0]
    c, q, _ = _reduced_quotient(lines[i][pos], lines[k][pos])
    lines[i] = K.row_combine(c, lines[i], q, lines[k])
    if tracker:
        tracker.combine(ti, c, q, tk)
    _make_primitive(lines, i, tracker, ti)
    return max((_height(p) for p in lines[i] if p), default=0)


def smith_normal_form(A, keep_transforms=False, max_bits=None):
    """Smith normal form of a PolyMatrix over Q[t].

    Pivot: nonzero entry of least degree, then least coefficient height,
    then row-major position.  Rows and columns are cleared by pseudo-division
    and the integer content of every touched line is removed.

    With ``max_bits`` set, :class:`CoefficientBudgetError` is raised as soon
    as an intermediate coefficient exceeds that many bits.
    """
    rows, _ = int_rows(A.rows)
    nr, nc = A.nrows, A.ncols
    a = [list(r) for r in rows]
    L = _Tracker(nr) if keep_transforms else None
    R = _Tracker(nc) if keep_transforms else None
    # int_rows scaled row i by some integer; fold that into L
    if keep_transforms:
        for i, r in enumerate(A.rows):
            scale = _row_scale(r, rows[i])
            if scale != 1:
                L.m[i] = [x * scale for x in L.m[i]]
    diag = []
    for k in range(min(nr, nc)):
        while True:
            best = None
            for i in range(k, nr):
                for j in range(k, nc):
                    e = a[i][j]
                    if e:
                        key = (len(e), _height(e), i, j)
                        if best is None or key < best:
                            best = key
            if best is None:
                break
            _, _, pi, pj = best
            if pi != k:
                a[pi], a[k] = a[k], a[pi]
                if L:
                    L.swap(pi, k)
            if pj != k:
                for r in a:
                    r[pj], r[k] = r[k], r[pj]
                if R:
                    R.swap(pj, k)
            clean = True
            bits = 0
            for i in range(k + 1, nr):
                if a[i][k]:
                    bits = max(bits, _clear_pair(a, k, i, L))
            for j in range(k + 1, nc):
                if a[k][j]:
                    cols = [[row[k] for row in a], [row[j] for row in a]]
                    bits = max(bits, _clear_pair(cols, 0, 1, R, (k, j)))
                    for i in range(nr):
                        a[i][k], a[i][j] = cols[0][i], cols[1][i]
            if max_bits is not None and bits > max_bits:
                raise CoefficientBudgetError(f"coefficients exceeded {max_bits} bits")
            if any(a[i][k] for i in range(k + 1, nr)) or any(a[k][j] for j in range(k + 1, nc)):
                clean = False
            piv = a[k][k]
            if not clean:
                continue
            bad = None
            for i in range(k + 1, nr):
                for j in range(k + 1, nc):
                    if not _divides(piv, a[i][j]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[k] = [K.add(x, y) for x, y in zip(a[k], a[bad])]
            if L:
                L.add(k, bad)
        if best is None:
            break
        diag.append(a[k][k])
    out = []
    for k, d in enumerate(diag):
        p = UniPoly.from_ints(d)
        lc = p.lc
        out.append(p.monic())
        if L:
            L.divide(k, lc)
    out += [UniPoly()] * (min(nr, nc) - len(out))
    left = right = None
    if keep_transforms:
        left = PolyMatrix(L.m, "left")
        right = PolyMatrix([list(col) for col in zip(*R.m)], "right")
    return SmithForm(out, left, right)


def _row_scale(orig, scaled):
    for o, s in zip(orig, scaled):
        if not o.is_zero():
            return UniPoly.from_ints(s).lc / o.lc
    return 1


# -- determinantal divisors ------------------------------------------------

def chain_from_smith(sf):
    """D[i] as running products of the invariant factors."""
    D = [UniPoly([1])]
    for d in sf.diag:
        D.append(D[-1] * d if not D[-1].is_zero() else UniPoly())
    return DivisorChain(D)


def determinantal_divisors(A, sizes=None, max_size=8, override=False, homogeneous=False):
    """Gcds of minors by enumeration.

    Parameters
    ----------
    A : PolyMatrix
    sizes : iterable of int, optional
        Minor sizes to compute; all of them by default.  Entries of ``D``
        that were not requested are ``None``.
    max_size : int
        Full chains are refused above this dimension unless ``override``.
    homogeneous : bool
        Return (t,u)-forms; ``A`` must carry degree data.
    """
    r = min(A.nrows, A.ncols)
    if sizes is None:
        if max(A.nrows, A.ncols) > max_size and not override:
            raise EnumerationGuardError(
                f"{A.nrows}x{A.ncols} exceeds the enumeration guard {max_size}")
        sizes = range(1, r + 1)
    D = [None] * (r + 1)
    D[0] = BiHomPoly.one(TU) if homogeneous else UniPoly([1])
    for k in sorted(set(sizes)):
        minors = []
        done = False
        for rows in combinations(range(A.nrows), k):
            for cols in combinations(range(A.ncols), k):
                m = A.homogeneous_minor(rows, cols) if homogeneous else A.minor(rows, cols)
                if m.is_zero():
                    continue
                minors.append(m)
                if not homogeneous and m.degree == 0:
                    done = True
                    break
            if done:
                break
        if homogeneous:
            D[k] = bihom_gcd_many(minors) if minors else BiHomPoly.zero(0, TU)
        else:
            D[k] = poly_gcd_many(minors) if minors else UniPoly()
    return DivisorChain(D)


# -- singular factors ------------------------------------------------------

def factors_from_diag(diag, n, one=None):
    """d_k for k = 2..n from the invariant factors of a matrix of corank one.

    The matrix may be smaller than n (the psi_j family); missing leading
    invariant factors are 1.  Works on UniPoly or on (t,u)-forms.
    """
    if one is None:
        one = UniPoly([1])
    size = len(diag)
    nonzero = [d for d in diag if not d.is_zero()]
    if len(nonzero) != size - 1 or not diag[-1].is_zero():
        raise SingularFactorError(f"expected corank 1, got rank {len(nonzero)} of {size}")
    e = [one] * n
    for i in range(1, n):
        pos = size - 1 - (n - i)
        if pos >= 0:
            e[i] = diag[pos]
    out = {}
    for k in range(2, n + 1):
        try:
            out[k] = e[n - k + 1].exact_div(e[n - k])
        except ArithmeticError as exc:
            raise SingularFactorError("invariant factors do not form a divisibility chain") \
                from exc
    return out


MOEBIUS_BOUND = 3
MOEBIUS_BITS = 12000


def _rank_at_infinity(M, psi):
    """Rank of M at the point that psi sends to u' = 0."""
    t0, u0 = psi.image_of_infinity()
    return rank(M.evaluate_form(t0, u0))


def _low_order(p):
    """Multiplicity of the root t = 0 of a nonzero UniPoly."""
    return next(i for i, c in enumerate(p.coeffs) if c)


def chart_invariant_factors(M):
    """Invariant factors of a homogeneous matrix as (t,u)-forms, from two charts.

    The Smith form at u = 1 gives every factor away from infinity; the Smith
    form of the swapped matrix at t = 1 gives the power of u in each one.
    """
    aff = smith_normal_form(M).diag
    swapped = smith_normal_form(M.moebius(MoebiusChange.swap())).diag
    forms = []
    for d, w in zip(aff, swapped):
        if d.is_zero() != w.is_zero():
            raise SingularFactorError("the two charts disagree on the rank")
        if d.is_zero():
            forms.append(BiHomPoly.zero(0, TU))
        else:
            forms.append(normalize_primitive(
                BiHomPoly.homogenize(d, d.degree + _low_order(w), TU)))
    return forms


def moebius_invariant_factors(M, psi, max_bits=None):
    """Invariant factors as (t,u)-forms through one change of coordinates ``psi``.

    The Smith form of M after ``psi`` is taken at u' = 1, homogenized and
    pulled back.  Returns None when an invariant factor vanishes at the
    point sent to infinity (the rank there drops below the generic rank).
    """
    sf = smith_normal_form(M.moebius(psi), max_bits=max_bits)
    if _rank_at_infinity(M, psi) != sf.rank:
        return None
    inv = psi.inverse()
    forms = []
    for d in sf.diag:
        if d.is_zero():
            forms.append(BiHomPoly.zero(0, TU))
        else:
            form = BiHomPoly.homogenize(d, d.degree, TU)
            forms.append(normalize_primitive(apply_moebius(form, inv)))
    return forms


def homogeneous_divisor_chain(M):
    """D[i] (gcd of i-minors) of a homogeneous matrix as (t,u)-forms, via Smith forms."""
    D = [BiHomPoly.one(TU)]
    for f in chart_invariant_factors(M):
        D.append(BiHomPoly.zero(0, TU) if f.is_zero() or D[-1].is_zero()
                 else normalize_primitive(D[-1] * f))
    return DivisorChain(D)


def _factor_set(forms, n, mu, psi, seed):
    raw = factors_from_diag(forms, n, BiHomPoly.one(TU))
    factors = {k: normalize_primitive(d) for k, d in raw.items()}
    result = SingularFactorSet(n, mu, factors, psi=psi, seed=seed)
    target = (n - 1) * (n - 2)
    if result.degree_sum() != target:
        return None, f"degree sum {result.degree_sum()} != {target}"
    for k in range(n - mu + 1, n + 1):
        if factors[k].degree:
            raise SingularFactorError(f"d_{k} is not 1 although k > n - mu")
    return result, None


def singular_factors(S, n, mu, seed=None, max_retries=12, psi=None, max_bits=MOEBIUS_BITS):
    """Homogeneous singular factors d_2..d_n of a corank-one matrix.

    Without ``seed`` and ``psi`` the two-chart Smith forms are used.  With a
    seed, changes of coordinates are drawn from ``random.Random(seed)``; a
    draw is rejected when an invariant factor vanishes at the point sent to
    infinity, when intermediate coefficients exceed ``max_bits``, or when
    the degree sum is not (n-1)(n-2).  The last draw runs without the
    coefficient budget.  An explicit ``psi`` is used as given.

    Raises
    ------
    SingularFactorError
        For non-birational or degenerate input.
    """
    if seed is None and psi is None:
        result, why = _factor_set(chart_invariant_factors(S), n, mu, None, None)
        if result is None:
            raise SingularFactorError(f"non-birational or degenerate input ({why})")
        return result
    if psi is not None:
        forms = moebius_invariant_factors(S, psi)
        if forms is None:
            raise SingularFactorError("an invariant factor vanishes at the image of infinity")
        result, why = _factor_set(forms, n, mu, psi, seed)
        if result is None:
            raise SingularFactorError(f"non-birational or degenerate input ({why})")
        return result
    rng = random.Random(seed)
    why = None
    for attempt in range(max_retries + 1):
        change = MoebiusChange.random(rng, bound=MOEBIUS_BOUND)
        budget = max_bits if attempt < max_retries else None
        try:
            forms = moebius_invariant_factors(S, change, budget)
        except CoefficientBudgetError as exc:
            why = str(exc)
            continue
        if forms is None:
            why = "a root sits at infinity after the change of coordinates"
            continue
        result, why = _factor_set(forms, n, mu, change, seed)
        if result is not None:
            return result
    raise SingularFactorError(f"non-birational or degenerate input ({why})")


@dataclass
class FittingReport:
    det_zero: bool
    first_fitting: bool
    trivial_range: bool
    messages: list = field(default_factory=list)

    @property
    def ok(self):
        return self.det_zero and self.first_fitting and self.trivial_range


def fitting_support_check(S, basis, delta):
    """det S = 0, D[n-1] equals Delta(t,1), and D[i] = 1 for i < mu."""
    n = S.nrows
    sf = smith_normal_form(S)
    chain = chain_from_smith(sf)
    msgs = []
    det_zero = chain.D[n].is_zero()
    if not det_zero:
        msgs.append("det S is not zero")
    first = normalize_primitive(chain.D[n - 1]) == normalize_primitive(delta.dehomogenize()) \
        if not chain.D[n - 1].is_zero() else False
    if not first:
        msgs.append("D[n-1] differs from Delta(t,1)")
    trivial = basis.mu < 1 or chain.D[basis.mu - 1].degree == 0
    if not trivial:
        msgs.append(f"D[{basis.mu - 1}] is not 1")
    return FittingReport(det_zero, first, trivial, msgs)
