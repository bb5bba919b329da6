"""Approximate complex roots for display (Aberth iteration on square-free parts)."""
import cmath
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import UniPoly, squarefree_decomposition


@dataclass
class RootApprox:
    """Approximate roots with multiplicities; ``converged`` is False on a partial result."""

    roots: list = field(default_factory=list)
    converged: bool = True
    max_residual: float = 0.0


def _horner(coeffs, z):
    p = 0j
    dp = 0j
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth(poly, tol=1e-12, max_iter=500):
    """Simultaneous roots of a square-free polynomial.

    Returns ``(roots, converged, residual)`` where the residual is the largest
    |f(z)| for f scaled to a monic polynomial.
    """
    d = poly.degree
    if d < 1:
        raise ValueError("need a polynomial of positive degree")
    lc = poly.lc
    coeffs = [complex(c / lc) for c in poly.coeffs]
    if d == 1:
        z = -coeffs[0]
        return [z], True, 0.0
    # Cauchy bound for the initial circle
    radius = 1 + max(abs(c) for c in coeffs[:-1])
    zs = [radius * 0.5 * cmath.exp(2j * cmath.pi * k / d + 0.4j) for k in range(d)]
    converged = False
    for _ in range(max_iter):
        biggest = 0.0
        new = []
        for i, z in enumerate(zs):
            p, dp = _horner(coeffs, z)
            if p == 0:
                new.append(z)
                continue
            ratio = p / dp if dp != 0 else complex(tol)
            s = sum(1 / (z - w) for j, w in enumerate(zs) if j != i and z != w)
            step = ratio / (1 - ratio * s)
            new.append(z - step)
            biggest = max(biggest, abs(step))
        zs = new
        if biggest < tol * 1e-3:
            converged = True
            break
    residual = max(abs(_horner(coeffs, z)[0]) for z in zs)
    if residual > tol:
        converged = False
    return zs, converged, residual


def complex_roots_approx(f, tol=Fraction(1, 10 ** 12)):
    """Approximate roots of ``f`` with multiplicities from its square-free decomposition.

    Non-convergence is reported through ``RootApprox.converged``; it is never
    silent.
    """
    if not isinstance(f, UniPoly):
        f = UniPoly(f)
    if f.degree < 1:
        raise ValueError("need a polynomial of positive degree")
    out = RootApprox()
    for factor, mult in squarefree_decomposition(f):
        if factor.degree < 1:
            continue
        zs, ok, res = aberth(factor, float(tol))
        out.converged = out.converged and ok
        out.max_residual = max(out.max_residual, res)
        for z in zs:
            out.roots.append((_clean(z), mult))
    out.roots.sort(key=lambda r: (round(r[0].real, 9), round(r[0].imag, 9)))
    return out


def _clean(z, eps=1e-14):
    re = 0.0 if abs(z.real) < eps else z.real
    im = 0.0 if abs(z.imag) < eps else z.imag
    return complex(re, im)
