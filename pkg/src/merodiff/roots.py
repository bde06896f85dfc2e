"""Roots of univariate polynomials with multiplicities.

Exact polynomials are split with Yun's squarefree decomposition, so
multiplicities are always exact.  Roots of each squarefree factor come from
mpmath's ``polyroots``; any root that is a Gaussian rational is recognised
and verified by exact substitution, so rational roots stay exact.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import GaussianRational, Polynomial, Scalar, poly_gcd
from .numeric import DEFAULT_PREC, BigComplex, get_ctx


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: ``p = lc * prod g_k**k`` with the ``g_k`` squarefree
    and pairwise coprime.  Only non-constant factors are returned."""
    if p.degree < 1:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g.monic(), k))
        b = b // g
        c = d // g
        d = c - b.derivative()
        k += 1
    return out


def _to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    v = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -v if sign else v


def _recognize(root, p: Polynomial, prec: int) -> GaussianRational | None:
    bound = 2 ** max(16, prec // 4)
    cand = GaussianRational(_to_fraction(root.real).limit_denominator(bound),
                            _to_fraction(root.imag).limit_denominator(bound))
    return cand if not p(cand) else None


def numeric_roots(p: Polynomial, prec: int = DEFAULT_PREC) -> list:
    """All roots of ``p`` as raw mpc values at ``prec`` bits."""
    if p.degree < 1:
        return []
    ctx = get_ctx(prec + 32)
    coeffs = [c.to_mpc(ctx) for c in reversed(p.coeffs)]
    if p.degree == 1:
        return [-coeffs[1] / coeffs[0]]
    roots = ctx.polyroots(coeffs, maxsteps=400, extraprec=2 * prec, error=False)
    return sorted(roots, key=lambda r: (float(r.real), float(r.imag)))


def roots_of_squarefree(p: Polynomial, prec: int = DEFAULT_PREC) -> list[Scalar]:
    """Distinct roots of a squarefree polynomial, exact where possible."""
    if p.degree < 1:
        return []
    if p.is_exact:
        if p.degree == 1:
            return [-p[0] / p[1]]
        found: list[Scalar] = []
        rest = p
        for r in numeric_roots(p, prec):
            cand = _recognize(r, rest, prec) if rest.degree >= 1 else None
            if cand is not None:
                found.append(cand)
                rest = rest // Polynomial((-cand, 1))
        if rest.degree == 1:
            found.append(-rest[0] / rest[1])
        elif rest.degree > 1:
            found.extend(BigComplex(r, prec) for r in numeric_roots(rest, prec))
        return found
    return [BigComplex(r, prec) for r in numeric_roots(p, prec)]


def roots_with_multiplicity(p: Polynomial, prec: int = DEFAULT_PREC) -> list[tuple[Scalar, int]]:
    """``(root, multiplicity)`` pairs.  Floating polynomials are treated as
    squarefree (every root reported with multiplicity one)."""
    if p.degree < 1:
        return []
    if not p.is_exact:
        return [(r, 1) for r in roots_of_squarefree(p, prec)]
    out = []
    for g, k in squarefree_decomposition(p):
        out.extend((r, k) for r in roots_of_squarefree(g, prec))
    return out
