"""Dense univariate and binary-form polynomials with exact rational coefficients."""
from fractions import Fraction
from functools import reduce
from math import lcm

from . import kernels as K

SV = "SV"
TU = "TU"
_VARS = {SV: ("s", "v"), TU: ("t", "u")}


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def _trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def ints_of(coeffs):
    """Clear denominators: return ``(ints, den)`` with ``coeffs == ints/den``."""
    den = 1
    for x in coeffs:
        if x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        return [x.numerator for x in coeffs], 1
    return [x.numerator * (den // x.denominator) for x in coeffs], den


class UniPoly:
    """Polynomial in one variable over Q; ``coeffs[i]`` is the coefficient of t^i.

    The zero polynomial has degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim([_frac(c) for c in coeffs])

    @classmethod
    def from_ints(cls, ints, den=1):
        p = cls.__new__(cls)
        if den == 1:
            p.coeffs = tuple(Fraction(x) for x in K.trim(list(ints)))
        else:
            p.coeffs = tuple(Fraction(x, den) for x in K.trim(list(ints)))
        return p

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots):
        p = cls([1])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    # -- basic properties -------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([_frac(other)])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_poly(self.coeffs, "t")

    def to_ints(self):
        return ints_of(self.coeffs)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        p = UniPoly.__new__(UniPoly)
        p.coeffs = tuple(-c for c in self.coeffs)
        return p

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        a, da = self.to_ints()
        b, db = other.to_ints()
        return UniPoly.from_ints(K.mul(a, b), da * db)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = UniPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, c):
        if isinstance(c, UniPoly):
            return self.exact_div(c)
        c = _frac(c)
        return UniPoly([x / c for x in self.coeffs])

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lb = other.lc
        if len(r) - 1 < db:
            return UniPoly(), UniPoly(r)
        q = [Fraction(0)] * (len(r) - db)
        b = other.coeffs
        for e in range(len(r) - 1 - db, -1, -1):
            c = r[e + db] / lb
            if c:
                q[e] = c
                for i in range(db + 1):
                    r[e + i] -= c * b[i]
        return UniPoly(q), UniPoly(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        """Quotient over Q; raise ArithmeticError if the division leaves a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return UniPoly()
        a, da = self.to_ints()
        b, db = other.to_ints()
        # a/da = q * b/db  <=>  a*db = q*b*da ; divide by primitive b
        cb = K.content(b)
        bp = [x // cb for x in b]
        try:
            qi = K.divexact(a, bp)
        except ArithmeticError:
            raise ArithmeticError("polynomial division is not exact") from None
        scale = Fraction(db, da * cb)
        return UniPoly([Fraction(x) * scale for x in qi])

    def divides(self, other):
        """True when ``self`` divides ``other`` in Q[t]."""
        if self.is_zero():
            return other.is_zero()
        if other.is_zero():
            return True
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero():
            return self
        return self / self.lc

    def compose(self, other):
        """``self(other(t))``."""
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc


def _coerce(x):
    if isinstance(x, UniPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return UniPoly([x])
    return NotImplemented


class BiHomPoly:
    """Binary form of fixed degree; ``coeffs[i]`` multiplies s^i v^(d-i).

    ``varpair`` is ``"SV"`` or ``"TU"``; the same class serves both pairs.
    """

    __slots__ = ("degree", "coeffs", "varpair")

    def __init__(self, degree, coeffs, varpair=SV):
        coeffs = tuple(_frac(c) for c in coeffs)
        if degree < 0:
            raise ValueError("degree must be non-negative")
        if len(coeffs) != degree + 1:
            raise ValueError(
                f"a degree-{degree} form needs {degree + 1} coefficients, got {len(coeffs)}")
        if varpair not in _VARS:
            raise ValueError(f"unknown variable pair {varpair!r}")
        self.degree = degree
        self.coeffs = coeffs
        self.varpair = varpair

    @classmethod
    def homogenize(cls, f, degree=None, varpair=SV):
        """Homogenize a dehomogenized polynomial (second variable set to 1)."""
        if degree is None:
            degree = max(f.degree, 0)
        if f.degree > degree:
            raise ValueError(f"cannot homogenize degree {f.degree} to degree {degree}")
        c = list(f.coeffs) + [Fraction(0)] * (degree + 1 - len(f.coeffs))
        return cls(degree, c, varpair)

    @classmethod
    def zero(cls, degree=0, varpair=SV):
        return cls(degree, [0] * (degree + 1), varpair)

    @classmethod
    def one(cls, varpair=SV):
        return cls(0, [1], varpair)

    @classmethod
    def linear(cls, a, b, varpair=SV):
        """The form ``a*s + b*v``."""
        return cls(1, [b, a], varpair)

    def is_zero(self):
        return not any(self.coeffs)

    def dehomogenize(self):
        """Set the second variable to 1."""
        return UniPoly(self.coeffs)

    def dehomogenize_first(self):
        """Set the first variable to 1 (polynomial in the second variable)."""
        return UniPoly(reversed(self.coeffs))

    def valuation_second(self):
        """Exponent of the largest power of v (or u) dividing the form."""
        if self.is_zero():
            raise ValueError("valuation of the zero form")
        return self.degree - max(i for i, c in enumerate(self.coeffs) if c)

    def valuation_first(self):
        if self.is_zero():
            raise ValueError("valuation of the zero form")
        return next(i for i, c in enumerate(self.coeffs) if c)

    def effective_degree(self):
        """Degree after dividing out all powers of the second variable."""
        return self.dehomogenize().degree

    def __eq__(self, other):
        if not isinstance(other, BiHomPoly):
            return NotImplemented
        return (self.degree, self.coeffs, self.varpair) == (
            other.degree, other.coeffs, other.varpair)

    def __hash__(self):
        return hash((self.degree, self.coeffs, self.varpair))

    def __repr__(self):
        return f"BiHomPoly({self.degree}, {[str(c) for c in self.coeffs]}, {self.varpair!r})"

    def __str__(self):
        x, y = _VARS[self.varpair]
        return format_form(self.coeffs, x, y)

    def _check(self, other):
        if other.varpair != self.varpair:
            raise ValueError(f"variable pair mismatch: {self.varpair} vs {other.varpair}")

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degrees")
        return BiHomPoly(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)],
                         self.varpair)

    def __neg__(self):
        return BiHomPoly(self.degree, [-c for c in self.coeffs], self.varpair)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiHomPoly(self.degree, [c * other for c in self.coeffs], self.varpair)
        if not isinstance(other, BiHomPoly):
            return NotImplemented
        self._check(other)
        prod = self.dehomogenize() * other.dehomogenize()
        return BiHomPoly.homogenize(prod, self.degree + other.degree, self.varpair)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = BiHomPoly.one(self.varpair)
        for _ in range(k):
            result = result * self
        return result

    def exact_div(self, other):
        self._check(other)
        if other.degree > self.degree:
            raise ArithmeticError("divisor has larger degree")
        if self.is_zero():
            return BiHomPoly.zero(self.degree - other.degree, self.varpair)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero form")
        # strip powers of v from the divisor, which dehomogenization loses
        ev = other.valuation_second()
        if self.valuation_second() < ev:
            raise ArithmeticError("form division is not exact")
        q = self.dehomogenize().exact_div(other.dehomogenize())
        return BiHomPoly.homogenize(q, self.degree - other.degree, self.varpair)

    def divides(self, other):
        try:
            other.exact_div(self)
        except (ArithmeticError, ZeroDivisionError):
            return False
        return True

    def __call__(self, x, y):
        d = self.degree
        return sum(c * x ** i * y ** (d - i) for i, c in enumerate(self.coeffs))

    def with_varpair(self, varpair):
        return BiHomPoly(self.degree, self.coeffs, varpair)


class MoebiusChange:
    """Invertible linear change of P^1 coordinates.

    Acting on a form f, it substitutes ``t -> alpha*t + beta*u`` and
    ``u -> delta*t + gamma*u``.
    """

    __slots__ = ("alpha", "beta", "delta", "gamma")

    def __init__(self, alpha, beta, delta, gamma):
        self.alpha, self.beta, self.delta, self.gamma = map(_frac, (alpha, beta, delta, gamma))
        if self.det == 0:
            raise ValueError("singular change of coordinates")

    @property
    def det(self):
        return self.alpha * self.gamma - self.beta * self.delta

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def swap(cls):
        return cls(0, 1, 1, 0)

    @classmethod
    def random(cls, rng, bound=20):
        while True:
            a, b, d, g = (rng.randint(-bound, bound) for _ in range(4))
            if a * g - b * d:
                return cls(a, b, d, g)

    def inverse(self):
        dt = self.det
        return MoebiusChange(self.gamma / dt, -self.beta / dt, -self.delta / dt, self.alpha / dt)

    def image_of_infinity(self):
        """Original coordinates of the new point u' = 0, as ``(t, u)``."""
        return self.alpha, self.delta

    def __eq__(self, other):
        return isinstance(other, MoebiusChange) and (
            self.alpha, self.beta, self.delta, self.gamma) == (
            other.alpha, other.beta, other.delta, other.gamma)

    def __repr__(self):
        return f"MoebiusChange({self.alpha}, {self.beta}, {self.delta}, {self.gamma})"


def moebius_dehomogenized(f, degree, psi):
    """Transform the dehomogenization of a degree-``degree`` form; returns a UniPoly."""
    if f.is_zero():
        return UniPoly()
    num, den = f.to_ints()
    ints, pden = _moebius_ints(num, degree, psi)
    return UniPoly.from_ints(ints, den * pden)


_POW_CACHE = {}


def _powers(lin, k):
    key = (tuple(lin), k)
    hit = _POW_CACHE.get(key)
    if hit is None:
        pw = [[1]]
        for _ in range(k):
            pw.append(K.mul(pw[-1], lin))
        if len(_POW_CACHE) > 64:
            _POW_CACHE.clear()
        _POW_CACHE[key] = hit = pw
    return hit


def _moebius_ints(num, degree, psi):
    coeffs = [psi.alpha, psi.beta, psi.delta, psi.gamma]
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    a, b, d, g = (int(c * den) for c in coeffs)
    # t -> a t + b, u -> d t + g  (at u' = 1), all scaled by den
    lp = _powers([b, a], degree)
    mp = _powers([g, d], degree)
    out = []
    for i, c in enumerate(num):
        if c:
            out = K.add(out, K.scale(K.mul(lp[i], mp[degree - i]), c))
    return out, den ** degree


def apply_moebius(f, psi):
    """Substitute the change of coordinates into a binary form (degree preserved)."""
    if not isinstance(psi, MoebiusChange):
        raise TypeError("expected a MoebiusChange")
    g = moebius_dehomogenized(f.dehomogenize(), f.degree, psi)
    return BiHomPoly.homogenize(g, f.degree, f.varpair)


# -- normalization, gcd, square-free decomposition ------------------------

def normalize_primitive(f):
    """Canonical representative up to a nonzero rational scalar.

    Integer coefficients with content 1 and a positive coefficient on the
    highest-index nonzero monomial.
    """
    if isinstance(f, BiHomPoly):
        if f.is_zero():
            raise ValueError("cannot normalize the zero form")
        ints = K.primitive(K.trim(ints_of(f.coeffs)[0]))
        return BiHomPoly(f.degree, ints + [0] * (f.degree + 1 - len(ints)), f.varpair)
    if isinstance(f, UniPoly):
        if f.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        ints, _ = f.to_ints()
        return UniPoly.from_ints(K.primitive(ints))
    raise TypeError(f"cannot normalize {type(f).__name__}")


def same_up_to_scalar(f, g):
    """Equality up to a nonzero rational factor (zero only matches zero)."""
    if isinstance(f, BiHomPoly) and isinstance(g, BiHomPoly):
        if f.degree != g.degree or f.varpair != g.varpair:
            return False
    fz, gz = f.is_zero(), g.is_zero()
    if fz or gz:
        return fz and gz
    return normalize_primitive(f) == normalize_primitive(g)


def poly_gcd(f, g):
    """Monic gcd in Q[t]; gcd(0, 0) = 0."""
    if f.is_zero() and g.is_zero():
        return UniPoly()
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    return UniPoly.from_ints(K.gcd(f.to_ints()[0], g.to_ints()[0])).monic()


def poly_gcd_many(polys):
    """Monic gcd of an iterable of polynomials, stopping early at 1."""
    acc = []
    for p in polys:
        if p.is_zero():
            continue
        acc = K.gcd(acc, p.to_ints()[0]) if acc else K.primitive(p.to_ints()[0])
        if len(acc) == 1:
            return UniPoly([1])
    return UniPoly.from_ints(acc).monic() if acc else UniPoly()


def bihom_gcd(f, g):
    """Gcd of two binary forms, keeping roots at infinity.

    The power of the second variable is handled separately because
    dehomogenization drops it.
    """
    if f.varpair != g.varpair:
        raise ValueError(f"variable pair mismatch: {f.varpair} vs {g.varpair}")
    if f.is_zero() and g.is_zero():
        return BiHomPoly.zero(0, f.varpair)
    if f.is_zero():
        return normalize_primitive(g)
    if g.is_zero():
        return normalize_primitive(f)
    ev = min(f.valuation_second(), g.valuation_second())
    h = poly_gcd(f.dehomogenize(), g.dehomogenize())
    form = BiHomPoly.homogenize(h, h.degree, f.varpair)
    if ev:
        form = form * BiHomPoly(ev, [1] + [0] * ev, f.varpair)
    return normalize_primitive(form)


def bihom_gcd_many(forms):
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise ValueError("gcd of no nonzero forms")
    acc = normalize_primitive(forms[0])
    for f in forms[1:]:
        if acc.degree == 0:
            break
        acc = bihom_gcd(acc, f)
    return acc


def squarefree_decomposition(f):
    """Yun's algorithm: list of ``(factor, exponent)`` with primitive square-free factors."""
    if f.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    out = []
    if f.degree <= 0:
        return out
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((normalize_primitive(a), i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(f):
    return reduce(lambda x, y: x * y, (p for p, _ in squarefree_decomposition(f)), UniPoly([1]))


def multiplicity_of(factor, f):
    """Largest e with factor**e dividing f (factor of positive degree)."""
    if factor.degree <= 0:
        raise ValueError("factor must have positive degree")
    e = 0
    while not f.is_zero():
        try:
            f = f.exact_div(factor)
        except ArithmeticError:
            break
        e += 1
    return e


# -- formatting ------------------------------------------------------------

def _fmt_coeff(c, first):
    s = str(abs(c))
    sign = "-" if c < 0 else ("" if first else "+")
    return sign, s


def format_poly(coeffs, var="t"):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        sign, s = _fmt_coeff(c, not terms)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and abs(c) == 1:
            body = mono
        elif mono:
            body = f"{s}*{mono}"
        else:
            body = s
        terms.append(f"{sign}{body}" if not terms else f" {sign or '+'} {body}")
    if not terms:
        return "0"
    out = "".join(terms)
    return out


def format_form(coeffs, x, y):
    d = len(coeffs) - 1
    terms = []
    for i in range(d, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        parts = []
        if i:
            parts.append(x if i == 1 else f"{x}^{i}")
        if d - i:
            parts.append(y if d - i == 1 else f"{y}^{d - i}")
        mono = "*".join(parts)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = mono if (mono and a == 1) else (f"{a}*{mono}" if mono else str(a))
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(f" {sign} {body}")
    return "".join(terms) if terms else "0"
