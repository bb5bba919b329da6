"""Mu-bases of the syzygy module of a plane parameterization, and H_Q."""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .polycore.linalg import nullspace, rank, solve
from .polycore.poly import SV, BiHomPoly, bihom_gcd, bihom_gcd_many
from .polycore.forms import sylvester_rows
from .polycore.linalg import det as rat_det


class ParameterizationError(ValueError):
    """Invalid or degenerate parameterization."""


class MuBasisError(ArithmeticError):
    """No valid mu-basis could be assembled."""


@dataclass(frozen=True)
class Parameterization:
    """Three binary forms (a, b, c) in (s,v) of a common degree n >= 3 with no common factor."""

    a: BiHomPoly
    b: BiHomPoly
    c: BiHomPoly

    def __post_init__(self):
        forms = (self.a, self.b, self.c)
        if any(f.varpair != SV for f in forms):
            raise ParameterizationError("parameterization forms must be in (s,v)")
        n = self.a.degree
        if any(f.degree != n for f in forms):
            raise ParameterizationError(
                f"forms have different degrees {[f.degree for f in forms]}")
        if n < 3:
            raise ParameterizationError(f"degree {n} < 3")
        if all(f.is_zero() for f in forms):
            raise ParameterizationError("all three forms are zero")
        if bihom_gcd_many(forms).degree > 0:
            raise ParameterizationError("gcd(a, b, c) is not 1")

    @property
    def n(self):
        return self.a.degree

    @property
    def forms(self):
        return (self.a, self.b, self.c)

    def __call__(self, t0, u0=1):
        """The image point of (t0 : u0)."""
        return PointP2(*(f(Fraction(t0), Fraction(u0)) for f in self.forms))


@dataclass(frozen=True)
class MuBasis:
    p: tuple
    q: tuple
    mu: int

    def syzygy(self, which):
        return self.p if which == "p" else self.q


class PointP2:
    """Projective point; scalar multiples compare equal."""

    __slots__ = ("coords",)

    def __init__(self, a1, a2, a3):
        coords = tuple(Fraction(x) for x in (a1, a2, a3))
        if not any(coords):
            raise ValueError("(0:0:0) is not a projective point")
        self.coords = coords

    def normalized(self):
        piv = next(x for x in self.coords if x)
        return tuple(x / piv for x in self.coords)

    def __eq__(self, other):
        return isinstance(other, PointP2) and self.normalized() == other.normalized()

    def __hash__(self):
        return hash(self.normalized())

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return "(" + ":".join(str(x) for x in self.normalized()) + ")"


# -- syzygy solving --------------------------------------------------------

def _syzygy_matrix(forms, d):
    """Matrix of (g1, g2, g3) -> sum g_i f_i for degree-d multipliers.

    Unknowns are ordered g1 coefficients (s^0..s^d), then g2, then g3; rows
    are the coefficients of the degree n+d product.
    """
    n = forms[0].degree
    rows = [[Fraction(0)] * (3 * (d + 1)) for _ in range(n + d + 1)]
    for i, f in enumerate(forms):
        for j in range(d + 1):
            for k, c in enumerate(f.coeffs):
                if c:
                    rows[j + k][i * (d + 1) + j] = c
    return rows


def _split(vec, d):
    return tuple(BiHomPoly(d, vec[i * (d + 1):(i + 1) * (d + 1)], SV) for i in range(3))


def _flat(triple):
    return [c for f in triple for c in f.coeffs]


def _shift(triple, i, extra):
    """s^i v^(extra - i) * triple."""
    mono = BiHomPoly(extra, [1 if k == i else 0 for k in range(extra + 1)], SV)
    return tuple(mono * f for f in triple)


def syzygies(forms, d):
    """Echelon basis of degree-d syzygies of ``forms``."""
    return [_split(v, d) for v in nullspace(_syzygy_matrix(forms, d), 3 * (d + 1))]


def hilbert_burch(p, q):
    """The 2x2 minors (p2q3 - p3q2, p3q1 - p1q3, p1q2 - p2q1)."""
    return (p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0])


def _common_scalar(minors, forms):
    """lambda with minors == lambda * forms, or None."""
    lam = None
    for m, f in zip(minors, forms):
        for x, y in zip(m.coeffs, f.coeffs):
            if y == 0:
                if x != 0:
                    return None
                continue
            r = x / y
            if lam is None:
                lam = r
            elif r != lam:
                return None
    return lam if lam else None


def compute_mu_basis(phi):
    """Smallest-degree syzygy p and a complementary q of degree n - mu.

    Parameters
    ----------
    phi : Parameterization

    Returns
    -------
    MuBasis
        ``p`` is the echelon-first syzygy in the minimal degree; ``q`` is the
        echelon-first syzygy of degree n - mu that is not a multiple of p.
    """
    forms = phi.forms
    n = phi.n
    mu = None
    for d in range(0, n + 1):
        basis = syzygies(forms, d)
        if basis:
            mu = d
            break
    if mu is None:
        raise MuBasisError("no syzygy found up to degree n")
    if mu == 0:
        raise ParameterizationError("a, b, c are linearly dependent: the image is a line")
    p = basis[0]
    m = n - mu
    multiples = [_flat(_shift(p, i, m - mu)) for i in range(m - mu + 1)]
    base_rank = rank(multiples)
    candidates = basis[1:] if m == mu else syzygies(forms, m)
    for q in candidates:
        if rank(multiples + [_flat(q)]) == base_rank + 1:
            if _common_scalar(hilbert_burch(p, q), forms) is not None:
                return MuBasis(p, q, mu)
    raise MuBasisError("no valid q found; gcd(a,b,c) may not be 1")


@dataclass
class ValidityReport:
    syzygy_p: bool
    syzygy_q: bool
    degrees_ok: bool
    hilbert_burch: bool
    scalar: Fraction = None
    messages: list = field(default_factory=list)

    @property
    def ok(self):
        return self.syzygy_p and self.syzygy_q and self.degrees_ok and self.hilbert_burch


def _is_syzygy(triple, forms):
    acc = None
    for g, f in zip(triple, forms):
        term = g * f
        acc = term if acc is None else acc + term
    return acc.is_zero()


def validate_mu_basis(phi, basis):
    """Check both syzygy identities, the degrees and the Hilbert-Burch minors."""
    forms = phi.forms
    n = phi.n
    msgs = []
    sp = _is_syzygy(basis.p, forms)
    if not sp:
        msgs.append("p is not a syzygy of (a, b, c)")
    sq = _is_syzygy(basis.q, forms)
    if not sq:
        msgs.append("q is not a syzygy of (a, b, c)")
    dp = {f.degree for f in basis.p}
    dq = {f.degree for f in basis.q}
    deg_ok = (dp == {basis.mu} and dq == {n - basis.mu} and 1 <= basis.mu <= n - basis.mu)
    if not deg_ok:
        msgs.append(f"degrees {sorted(dp)}, {sorted(dq)} do not match mu={basis.mu}, n={n}")
    lam = None
    if deg_ok:
        lam = _common_scalar(hilbert_burch(basis.p, basis.q), forms)
    if lam is None:
        msgs.append("2x2 minors are not a common multiple of (a, b, c)")
    return ValidityReport(sp, sq, deg_ok, lam is not None, lam, msgs)


# -- implicit equation -----------------------------------------------------

class TernaryForm:
    """Form in (x1, x2, x3) stored as ``{(i, j, k): coeff}`` with i + j + k = degree."""

    def __init__(self, degree, terms):
        self.degree = degree
        self.terms = {e: Fraction(c) for e, c in terms.items() if c}

    def __call__(self, x1, x2, x3):
        return sum(c * x1 ** i * x2 ** j * x3 ** k for (i, j, k), c in self.terms.items())

    def normalized(self):
        if not self.terms:
            raise ValueError("zero form")
        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, c)
        lead = ints[max(ints)]
        if lead < 0:
            g = -g
        return TernaryForm(self.degree, {e: Fraction(c, g) for e, c in ints.items()})

    def __eq__(self, other):
        return (isinstance(other, TernaryForm) and self.degree == other.degree
                and self.terms == other.terms)

    def __repr__(self):
        parts = []
        for (i, j, k), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{n}" + (f"^{e}" if e > 1 else "")
                            for n, e in ((1, i), (2, j), (3, k)) if e)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts) or "0"


def _specialize(triple, x):
    d = triple[0].degree
    return BiHomPoly(d, [sum(f.coeffs[i] * xi for f, xi in zip(triple, x))
                         for i in range(d + 1)], SV)


def implicit_at(basis, x):
    """Res_(s,v)(p(x), q(x)) at a numeric point x."""
    pf = _specialize(basis.p, x)
    qf = _specialize(basis.q, x)
    rows = sylvester_rows(pf.coeffs, pf.degree, qf.coeffs, qf.degree, Fraction(0))
    return rat_det(rows)


def implicit_equation(basis):
    """Implicit equation Res_(s,v)(p, q) as a normalized TernaryForm of degree n.

    Found by interpolating the resultant on the grid x3 = 1, i + j <= n.
    """
    n = basis.p[0].degree + basis.q[0].degree
    monos = [(i, j, n - i - j) for i in range(n + 1) for j in range(n + 1 - i)]
    pts = [(Fraction(i), Fraction(j), Fraction(1)) for i, j, _ in monos]
    a = [[x1 ** i * x2 ** j for i, j, _ in monos] for x1, x2, _ in pts]
    b = [[implicit_at(basis, x)] for x in pts]
    sol = solve(a, b)
    return TernaryForm(n, {e: s[0] for e, s in zip(monos, sol)}).normalized()


# -- H_Q -------------------------------------------------------------------

def h_invariant(phi, basis, point):
    """gcd(sum alpha_i p_i, sum alpha_i q_i); its degree is the multiplicity of Q.

    The zero form is returned for the (impossible on valid input) case of
    both specializations vanishing.
    """
    alpha = tuple(point)
    return bihom_gcd(_specialize(basis.p, alpha), _specialize(basis.q, alpha))


def multiplicity_range_check(phi, basis, point):
    """True iff deg H_Q lies in {0, 1} or [2, mu] or equals n - mu."""
    m = h_invariant(phi, basis, point).degree
    return m in (0, 1) or 2 <= m <= basis.mu or m == phi.n - basis.mu


def same_module(b1, b2):
    """Whether two mu-bases generate the same syzygy module (mutual membership)."""
    if b1.mu != b2.mu:
        return False

    def member(triple, basis):
        d = triple[0].degree
        gens = []
        for g in (basis.p, basis.q):
            extra = d - g[0].degree
            if extra < 0:
                continue
            gens.extend(_flat(_shift(g, i, extra)) for i in range(extra + 1))
        return rank(gens + [_flat(triple)]) == rank(gens)

    return all(member(t, b2) for t in (b1.p, b1.q)) and all(
        member(t, b1) for t in (b2.p, b2.q))
