"""Delta, reduced singular factors, D-resultants and the singularity stratification."""
from dataclasses import dataclass, field
from fractions import Fraction

from .mubasis import Parameterization, PointP2, compute_mu_basis, h_invariant
from .polycore.forms import BiForm, resultant, subresultant_minor_indices
from .polycore.poly import (SV, TU, BiHomPoly, UniPoly, bihom_gcd, bihom_gcd_many,
                            normalize_primitive, poly_gcd, squarefree_decomposition)
from .polycore.roots import complex_roots_approx
from .resmat import build_bezout_FG, build_moving_forms, build_sylvester, diagonal_quotients
from .smithlab import (SingularFactorSet, determinantal_divisors, homogeneous_divisor_chain,
                       singular_factors)


class DeltaError(ArithmeticError):
    """Delta vanished or had the wrong shape."""


@dataclass(frozen=True)
class DeltaInvariant:
    delta: BiHomPoly


@dataclass
class CheckResult:
    """Outcome of one identity check; ``witness`` holds printable evidence on failure."""

    name: str
    passed: bool
    witness: dict = field(default_factory=dict)


def _norm(f):
    return normalize_primitive(f) if not f.is_zero() else f


def _power(f, e):
    return f ** e if e > 0 else BiHomPoly.one(f.varpair)


def delta_subresultant(phi, basis, sylvester=None):
    """Delta(t,u) as the first principal subresultant minor of the Sylvester matrix.

    The homogeneous minor has degree n(n-2) and carries exactly u^(n-2);
    Delta is what remains, of degree (n-1)(n-2).
    """
    n, mu = phi.n, basis.mu
    S = sylvester if sylvester is not None else build_sylvester(build_moving_forms(phi, basis))
    rows, cols = subresultant_minor_indices(mu, n - mu)
    minor = S.homogeneous_minor(rows, cols)
    if minor.is_zero():
        raise DeltaError("the subresultant minor vanishes: non-birational input")
    if minor.valuation_second() < n - 2:
        raise DeltaError("the subresultant minor is not divisible by u^(n-2)")
    target = (n - 1) * (n - 2)
    delta = BiHomPoly.homogenize(minor.dehomogenize(), target, TU)
    return DeltaInvariant(_norm(delta))


def check_delta_product(delta, sf):
    """Delta equals prod d_k^(k-1) up to a scalar."""
    prod = _norm(sf.delta_product())
    ok = prod == delta.delta
    witness = {} if ok else {"delta": str(delta.delta), "product": str(prod)}
    return CheckResult("delta_product", ok, witness)


def reduced_singular_factors(sf):
    """d~_k: divide d_k by gcd(d~_k, d_l) for l = n - mu down to k + 1, once each."""
    top = sf.n - sf.mu
    reduced = {}
    for k in sorted(sf.factors):
        dt = sf.factors[k]
        for l in range(top, k, -1):
            dt = dt.exact_div(bihom_gcd(dt, sf.factors[l]))
        reduced[k] = _norm(dt)
    return SingularFactorSet(sf.n, sf.mu, dict(sf.factors), reduced, sf.psi, sf.seed)


# -- factor bookkeeping ----------------------------------------------------

def form_squarefree(f):
    """Square-free decomposition of a (t,u)-form, the factor u kept as its own atom."""
    out = []
    if f.degree == 0:
        return out
    ev = f.valuation_second()
    if ev:
        out.append((BiHomPoly.linear(0, 1, f.varpair), ev))
    aff = f.dehomogenize()
    if aff.degree > 0:
        for p, e in squarefree_decomposition(aff):
            out.append((BiHomPoly.homogenize(p, p.degree, f.varpair), e))
    return out


def form_multiplicity(atom, f):
    e = 0
    while f.degree >= atom.degree and atom.divides(f):
        f = f.exact_div(atom)
        e += 1
    return e


def gcd_free_basis(forms):
    """Pairwise coprime square-free atoms whose products give every input up to scalars."""
    atoms = []
    for f in forms:
        for p, _ in form_squarefree(f):
            atoms.append(p)
    changed = True
    while changed:
        changed = False
        for i in range(len(atoms)):
            for j in range(i + 1, len(atoms)):
                g = bihom_gcd(atoms[i], atoms[j])
                if g.degree > 0:
                    a, b = atoms[i], atoms[j]
                    parts = [g, a.exact_div(g), b.exact_div(g)]
                    atoms = [x for k, x in enumerate(atoms) if k not in (i, j)]
                    atoms += [_norm(x) for x in parts if x.degree > 0]
                    changed = True
                    break
            if changed:
                break
    uniq = []
    for a in atoms:
        if a not in uniq:
            uniq.append(a)
    return sorted(uniq, key=lambda a: (a.degree, [abs(c) for c in a.coeffs]))


def rational_roots(form):
    """Rational points (t0 : u0) where a square-free form vanishes, certified exactly."""
    out = []
    if form.degree == 0:
        return out
    if form.coeffs[-1] == 0:
        out.append((Fraction(1), Fraction(0)))
    aff = form.dehomogenize()
    if aff.degree < 1:
        return out
    approx = complex_roots_approx(aff)
    ints = aff.to_ints()[0]
    bound = abs(ints[-1])
    for z, _ in approx.roots:
        if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
            continue
        cand = Fraction(z.real).limit_denominator(bound)
        if aff(cand) == 0 and (cand, Fraction(1)) not in out:
            out.append((cand, Fraction(1)))
    return out


def linear_form_at(t0, u0):
    """The (t,u)-form u0*t - t0*u vanishing at (t0 : u0), normalized."""
    return _norm(BiHomPoly(1, [-t0, u0], TU))


# -- conjecture decomposition ----------------------------------------------

@dataclass
class Decomposition:
    """h_k and Psi_k^s with per-k certification flags."""

    h: dict
    psi: dict
    certified: dict
    points: list
    notes: list = field(default_factory=list)


@dataclass
class ProperPoint:
    multiplicity: int
    H: BiHomPoly
    point: PointP2 = None
    parameters: list = field(default_factory=list)
    certified: bool = True
    count: int = 1


def conjecture_decomposition(sf, phi, basis):
    """Split each d_k into h_k (proper points) and Psi_k^s (infinitely near points).

    Rational branch parameters are resolved through H_Q at the image point.
    An irrational square-free factor of d~_k with exponent one is a set of
    smooth branches of proper k-fold points and goes into h_k whole.  Any
    other factor is flagged as undetermined.
    """
    if not sf.reduced:
        sf = reduced_singular_factors(sf)
    top = sf.n - sf.mu
    h, psi, certified, points, notes = {}, {}, {}, [], []
    for k in range(2, sf.n + 1):
        dk = sf.factors[k]
        hk = BiHomPoly.one(TU)
        ok = True
        for atom, e in form_squarefree(sf.reduced[k]):
            rest = atom
            for t0, u0 in rational_roots(atom):
                lin = linear_form_at(t0, u0)
                rest = rest.exact_div(lin)
                Q = phi(t0, u0)
                known = next((pt for pt in points if pt.point == Q), None)
                if known is not None:
                    known.parameters.append((t0, u0))
                    continue
                H = h_invariant(phi, basis, Q).with_varpair(TU)
                params = [(t0, u0)]
                if H.degree != k or not H.divides(dk):
                    ok = False
                    notes.append(f"k={k}: H at {Q} has degree {H.degree}")
                    points.append(ProperPoint(H.degree, _norm(H), Q, params, False))
                    continue
                hk = hk * H
                points.append(ProperPoint(k, _norm(H), Q, params))
            if rest.degree == 0:
                continue
            rest = _norm(rest)
            if e == 1:
                hk = hk * rest
                whole = rest.degree % k == 0
                points.append(ProperPoint(k, rest, None, [], whole, rest.degree // k))
                if not whole:
                    ok = False
                    notes.append(f"k={k}: factor of degree {rest.degree} is not a union of "
                                 f"{k}-fold points")
            else:
                ok = False
                notes.append(f"k={k}: irrational factor {rest} with exponent {e} undetermined")
        hk = _norm(hk)
        if not hk.divides(dk):
            ok = False
            notes.append(f"k={k}: h_k does not divide d_k")
            residual = dk
        else:
            residual = dk.exact_div(hk)
        h[k] = hk
        for s in range(top, k, -1):
            support = BiHomPoly.one(TU)
            for a, _ in form_squarefree(sf.reduced[s]):
                support = support * a
            part = BiHomPoly.one(TU)
            g = bihom_gcd(residual, support)
            while g.degree > 0:
                residual = residual.exact_div(g)
                part = part * g
                g = bihom_gcd(residual, support)
            if part.degree:
                psi[(k, s)] = _norm(part)
        if residual.degree:
            ok = False
            notes.append(f"k={k}: residual {_norm(residual)} not attributed")
        certified[k] = ok
    return Decomposition(h, psi, certified, points, notes)


# -- Bezout divisors and D-resultants --------------------------------------

def expected_bezout_divisor(c_tu, sf, i):
    """c^(n-i) * prod_{k>i} d_k^(k-i), the gcd of the (n-i)-minors of B_{F,G}."""
    n = sf.n
    acc = _power(c_tu, n - i)
    for k in range(i + 1, n + 1):
        acc = acc * _power(sf.factors[k], k - i)
    return _norm(acc)


def bezout_divisor_check(phi, sf, max_enum=8, matrix=None):
    """Compare divisors of B_{F,G} with c^(n-i) prod d_k^(k-i).

    The full chain is enumerated for n <= max_enum; above that D_0, D_1 and
    D_(n-1) are checked, D_1 through one Smith form.
    """
    n = phi.n
    B = matrix if matrix is not None else build_bezout_FG(phi)
    c_tu = phi.c.with_varpair(TU)
    results = []
    if n <= max_enum:
        chain = determinantal_divisors(B, homogeneous=True, max_size=max_enum)
        got = {i: chain.D[n - i] for i in range(n + 1)}
        indices = range(1, n)
    else:
        chain = homogeneous_divisor_chain(B)
        got = {i: chain.D[n - i] for i in range(n + 1)}
        entries = [BiHomPoly.homogenize(B[i, j], B.entry_degree(i, j), TU)
                   for i in range(n) for j in range(n)]
        got[n - 1] = bihom_gcd_many(entries)
        indices = (1, n - 1)
    d0 = got[0].is_zero()
    results.append(CheckResult("bezout_D0", d0, {} if d0 else {"D0": str(got[0])}))
    for i in indices:
        want = expected_bezout_divisor(c_tu, sf, i)
        ok = _norm(got[i]) == want
        results.append(CheckResult(f"bezout_D{i}", ok,
                                   {} if ok else {"got": str(got[i]), "expected": str(want),
                                                  "index": i}))
    return results


def d_resultant(a, c, b, d):
    """Res_(s,v) of (a(s)c(t) - a(t)c(s))/(su-tv) and the same for (b, d)."""
    P = (BiForm.from_product(a, c.with_varpair(TU)) - BiForm.from_product(c, a.with_varpair(TU)))
    Q = (BiForm.from_product(b, d.with_varpair(TU)) - BiForm.from_product(d, b.with_varpair(TU)))
    return resultant(P.divide_diagonal(), Q.divide_diagonal())


def d_resultant_same_denominator(phi, sf=None):
    """Res of the diagonal quotients of F and G; checked against c^(n-1) prod d_k^(k-1).

    Returns ``(dres, check)`` where ``check`` is None without ``sf``.
    """
    dq = diagonal_quotients(phi)
    dres = _norm(resultant(dq.P, dq.Q))
    if sf is None:
        return dres, None
    want = _norm(_power(phi.c.with_varpair(TU), phi.n - 1) * sf.delta_product())
    ok = dres == want
    return dres, CheckResult("d_resultant_same_denominator", ok,
                             {} if ok else {"got": str(dres), "expected": str(want)})


@dataclass
class RationalFunctionPair:
    """Affine parameterization (A/C, B/D) with gcd(A,C) = gcd(B,D) = 1."""

    A: UniPoly
    C: UniPoly
    B: UniPoly
    D: UniPoly

    def __post_init__(self):
        for x in (self.A, self.C, self.B, self.D):
            if not isinstance(x, UniPoly):
                raise TypeError("expected UniPoly")
        if self.C.is_zero() or self.D.is_zero():
            raise ValueError("zero denominator")
        if poly_gcd(self.A, self.C).degree > 0 or poly_gcd(self.B, self.D).degree > 0:
            raise ValueError("numerator and denominator must be coprime")

    @property
    def n1(self):
        return max(self.A.degree, self.C.degree)

    @property
    def n2(self):
        return max(self.B.degree, self.D.degree)

    def homogenized(self):
        n1, n2 = self.n1, self.n2
        return (BiHomPoly.homogenize(self.A, n1, SV), BiHomPoly.homogenize(self.C, n1, SV),
                BiHomPoly.homogenize(self.B, n2, SV), BiHomPoly.homogenize(self.D, n2, SV))

    def structure(self):
        """(h, q, delta, nu) with c~ = h C~ = q D~, C~ = q delta, D~ = h delta."""
        At, Ct, Bt, Dt = self.homogenized()
        delta = bihom_gcd(Ct, Dt)
        h = Dt.exact_div(delta)
        q = Ct.exact_div(delta)
        ct = h * Ct
        nu = Parameterization(At * h, Bt * q, ct)
        return h, q, delta, nu


@dataclass
class GeneralDResultant:
    h: BiHomPoly
    q: BiHomPoly
    delta: BiHomPoly
    lhs: BiHomPoly
    rhs: BiHomPoly
    check: CheckResult
    nu: Parameterization = None


def d_resultant_general(pair):
    """h^(deg h - 1) q^(deg q - 1) D~ against delta^(deg delta - 1) Delta_nu."""
    h, q, delta, nu = pair.structure()
    At, Ct, Bt, Dt = pair.homogenized()
    dres = d_resultant(At, Ct, Bt, Dt)
    basis = compute_mu_basis(nu)
    dnu = delta_subresultant(nu, basis).delta
    tu = lambda f: f.with_varpair(TU)  # noqa: E731
    lhs = _power(tu(h), h.degree - 1) * _power(tu(q), q.degree - 1) * dres
    rhs = _power(tu(delta), delta.degree - 1) * dnu
    lhs, rhs = _norm(lhs), _norm(rhs)
    ok = lhs == rhs
    check = CheckResult("d_resultant_general", ok,
                        {} if ok else {"lhs": str(lhs), "rhs": str(rhs)})
    return GeneralDResultant(_norm(tu(h)), _norm(tu(q)), _norm(tu(delta)), lhs, rhs, check, nu)


# -- stratification --------------------------------------------------------

@dataclass
class FactorRow:
    atom: BiHomPoly
    exponents: dict
    reduced_exponents: dict
    roots: list = field(default_factory=list)
    points: list = field(default_factory=list)


@dataclass
class StratifiedReport:
    factors: dict
    reduced: dict
    squarefree: dict
    rows: list
    decomposition: Decomposition
    point_counts: dict
    proper_counts: dict
    infinitely_near: dict
    genus_budget: int
    genus_target: int
    best_effort: bool

    @property
    def budget_ok(self):
        return self.genus_budget == self.genus_target


def _point_at(phi, z):
    """Approximate image of a complex parameter, scaled so the largest coordinate is 1."""
    vals = []
    for f in phi.forms:
        acc = 0j
        for c in reversed(f.coeffs):
            acc = acc * z + float(c)
        vals.append(acc)
    big = max(vals, key=abs)
    if abs(big) == 0:
        return vals
    return [v / big for v in vals]


def stratification_report(phi, basis, sf, delta=None, approx_roots=False):
    """Exponent tables and proper / infinitely near multiplicity counts.

    The number of singular points of multiplicity k (proper or infinitely
    near) is deg d_k / k; their m(m-1) contributions must add up to
    (n-1)(n-2).
    """
    if not sf.reduced:
        sf = reduced_singular_factors(sf)
    n = sf.n
    dec = conjecture_decomposition(sf, phi, basis)
    atoms = gcd_free_basis([d for d in sf.factors.values() if d.degree])
    rows = []
    for a in atoms:
        ex = {k: form_multiplicity(a, d) for k, d in sf.factors.items()}
        rex = {k: form_multiplicity(a, d) for k, d in sf.reduced.items()}
        row = FactorRow(a, {k: e for k, e in ex.items() if e},
                        {k: e for k, e in rex.items() if e})
        if approx_roots:
            if a.coeffs[-1] == 0:
                row.roots.append("infinity")
            aff = a.dehomogenize()
            if aff.degree > 0:
                for z, _ in complex_roots_approx(aff).roots:
                    row.roots.append(z)
                    row.points.append(_point_at(phi, z))
        rows.append(row)
    counts, proper, best_effort = {}, {}, False
    budget = 0
    for k, d in sf.factors.items():
        if d.degree == 0:
            continue
        if d.degree % k:
            best_effort = True
        counts[k] = d.degree // k
        budget += k * (k - 1) * d.degree // k
        hk = dec.h.get(k)
        if hk is not None and dec.certified.get(k):
            proper[k] = hk.degree // k
        else:
            best_effort = True
    near = {}
    for (k, s), part in dec.psi.items():
        near.setdefault(s, {})[k] = part.degree // k
    sqf = {k: [(str(p), e) for p, e in form_squarefree(d)] for k, d in sf.factors.items()}
    return StratifiedReport(dict(sf.factors), dict(sf.reduced), sqf, rows, dec, counts, proper,
                            near, budget, (n - 1) * (n - 2), best_effort)


def analyse(phi, seed=None):
    """mu-basis, singular factors, Delta and reduced factors in one call.

    ``seed`` selects the seeded change-of-coordinates route; the default
    uses the two-chart Smith forms.
    """
    basis = compute_mu_basis(phi)
    S = build_sylvester(build_moving_forms(phi, basis))
    sf = reduced_singular_factors(singular_factors(S, phi.n, basis.mu, seed=seed))
    delta = delta_subresultant(phi, basis, S)
    return basis, S, sf, delta
