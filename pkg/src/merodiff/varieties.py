"""Subvarieties of strata: residue varieties, linear varieties ``S_M`` and
their exponentiated equations, Teichmueller-curve specs, pullbacks along
rational covers, log differentials and arithmetic points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Any, Sequence

from .errors import (ConstantMap, InputError, NonRationalCoefficient,
                     NonRationalResidueRatios, NonRealPeriods, NotSimplePole,
                     ShapeMismatch, UnmarkedBranchValue, ZeroQ)
from .exact import (GaussianRational, Polynomial, RationalFunction, Scalar,
                    all_exact, approx_equal, scalar)
from .linalg import lll_reduce, rank_exact, rref
from .numeric import DEFAULT_PREC, BigComplex, get_ctx, to_mpc
from .periods import algebraic_period_part, default_path, path_integral
from .roots import (_to_fraction, numeric_roots,
                    roots_with_multiplicity, squarefree_decomposition)
from .strata import FREE, DiffConfig, ResidueVector, residues
from .torus import _find_relations, torus_coordinates

CVP_BOUND = 100
ROOT_OF_UNITY_BOUND = 360


def _rational(x: Any, what: str) -> Fraction:
    """``x`` as a Fraction, or NonRationalCoefficient."""
    if isinstance(x, (int, Fraction, float)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, GaussianRational) and not x.im:
        return x.re
    raise NonRationalCoefficient(f"{what} must be rational, got {x}")


def _q_vector(q: Sequence[Any]) -> list[Fraction]:
    out = [_rational(x, "q") for x in q]
    if any(x == 0 for x in out):
        raise ZeroQ("every q_i must be nonzero")
    return out


def residue_variety_membership(cfg: DiffConfig, q: Sequence[Any]) -> bool:
    """``R_j = q_j R_0`` for ``j = 1..n``."""
    qs = _q_vector(q)
    R = residues(cfg).values
    if len(qs) != len(R) - 1:
        raise ShapeMismatch(f"q must have {len(R) - 1} entries, got {len(qs)}")
    return all(approx_equal(R[j + 1], R[0] * GaussianRational(qj)) for j, qj in enumerate(qs))


@dataclass(frozen=True)
class LinearVarietySpec:
    """``M = [[A, B], [0, C]]`` with ``C = [I | q]``.

    The rows of ``C`` read ``R_{j-1} + q_j R_n = 0``; ``A`` is rational and in
    reduced row-echelon form.  ``m`` is the number of relative periods (needed
    when ``A`` has no rows).
    """

    A: tuple[tuple[Fraction, ...], ...]
    B: tuple[tuple[Scalar, ...], ...]
    q: tuple[Fraction, ...]
    m: int

    def __init__(self, A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]],
                 q: Sequence[Any], m: int | None = None):
        A_ = tuple(tuple(_rational(x, "A") for x in row) for row in A)
        B_ = tuple(tuple(scalar(x) for x in row) for row in B)
        q_ = tuple(_q_vector(q))
        if m is None:
            if not A_:
                raise ShapeMismatch("m must be given when A has no rows")
            m = len(A_[0])
        if any(len(r) != m for r in A_):
            raise ShapeMismatch(f"A rows must have {m} entries")
        if len(B_) != len(A_) or any(len(r) != len(q_) + 1 for r in B_):
            raise ShapeMismatch(f"B must be {len(A_)} x {len(q_) + 1}")
        if A_:
            red, _ = rref(A_)
            if [[x.re for x in r] for r in red] != [list(r) for r in A_]:
                raise ShapeMismatch("A must be in reduced row-echelon form")
        object.__setattr__(self, "A", A_)
        object.__setattr__(self, "B", B_)
        object.__setattr__(self, "q", q_)
        object.__setattr__(self, "m", m)

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def rows(self) -> int:
        return len(self.A) + self.n

    @property
    def corank(self) -> int:
        """Dimension of the solution space in period coordinates."""
        return self.m + self.n + 1 - self.rank

    @property
    def rank(self) -> int:
        M = self.matrix()
        if all_exact(x for row in M for x in row):
            return rank_exact(M)
        from .linalg import rank_numeric
        return rank_numeric(M)

    def matrix(self) -> list[list[Scalar]]:
        zero = GaussianRational(0)
        M = [[GaussianRational(a) for a in ra] + list(rb) for ra, rb in zip(self.A, self.B)]
        for j in range(self.n):
            row = [zero] * self.m + [zero] * (self.n + 1)
            row[self.m + j] = GaussianRational(1)
            row[self.m + self.n] = GaussianRational(self.q[j])
            M.append(row)
        return M

    def residue_ratios(self) -> list[Fraction]:
        """The ``q'`` with ``R_j = q'_j R_0`` encoded by ``C``."""
        if self.n == 0:
            return []
        q1 = self.q[0]
        return [self.q[j] / q1 for j in range(1, self.n)] + [-1 / q1]

    def coefficient_field(self) -> str:
        """Smallest of Q, Q(i) or C containing the entries of ``[A | B]``."""
        entries = [x for row in self.B for x in row]
        if not all_exact(entries):
            return "C"
        return "Q" if all(not x.im for x in entries) else "Q(i)"


@dataclass(frozen=True)
class AlgebraicEquation:
    """``prod_ij w_ij^{a_ij} = c`` with ``w_ij = (y_j - x_i)/y_j``, i.e.
    ``c * prod y_j^a - prod (y_j - x_i)^a = 0``."""

    c: Scalar
    exponents: tuple[tuple[int, ...], ...]

    @property
    def is_trivial(self) -> bool:
        return not any(x for row in self.exponents for x in row)

    def lhs(self, cfg: DiffConfig) -> Scalar:
        w = torus_coordinates(cfg).w
        if len(w) != len(self.exponents) or any(len(a) != len(r) for a, r in zip(self.exponents, w)):
            raise ShapeMismatch("equation shape does not match the configuration")
        acc = GaussianRational(1)
        for row_w, row_a in zip(w, self.exponents):
            for x, a in zip(row_w, row_a):
                if a:
                    acc = acc * x ** a
        return acc

    def holds(self, cfg: DiffConfig) -> bool:
        v = self.lhs(cfg)
        if isinstance(v, GaussianRational) and isinstance(self.c, GaussianRational):
            return v == self.c
        prec = min([x.prec for x in (v, self.c) if isinstance(x, BigComplex)])
        ctx = get_ctx(prec)
        a, b = to_mpc(v, ctx), to_mpc(self.c, ctx)
        return abs(a - b) <= ctx.mpf(2) ** (-(prec // 2)) * max(1, abs(b))


def _exp_two_pi_i(r: Scalar, prec: int) -> Scalar:
    """``exp(2*pi*i*r)``, exact when ``4r`` is an integer."""
    if isinstance(r, GaussianRational) and not r.im and (4 * r.re).denominator == 1:
        return [GaussianRational(1), GaussianRational(0, 1),
                GaussianRational(-1), GaussianRational(0, -1)][int(4 * r.re) % 4]
    ctx = get_ctx(prec)
    return BigComplex(ctx.exp(2j * ctx.pi * to_mpc(r, ctx)), prec)


def exponentiate_linear_row(c_coeffs: Sequence[Any], d_coeffs: Sequence[Any],
                            q: Sequence[Any], prec: int = DEFAULT_PREC) -> AlgebraicEquation:
    """Exponentiate ``sum c_i int_i + sum d_l 2*pi*i*R_l = 0`` on ``R_j = q_j R_0``.

    There the row reads ``R_0 (sum c_i q_j log w_ij + 2*pi*i sum d_l q_l)``.
    Multiplying by the common denominator ``L`` of the ``c_i q_j`` gives
    integer exponents ``a`` and the constant ``b = L*2*pi*i*sum d_l q_l``;
    both are divided by ``gcd(a)`` and ``c = exp(-b)``.
    """
    cs = [_rational(x, "c") for x in c_coeffs]
    qs = [Fraction(1)] + [_rational(x, "q") for x in q]
    ds = [scalar(x) for x in d_coeffs]
    if len(ds) != len(qs):
        raise ShapeMismatch(f"d must have {len(qs)} entries, got {len(ds)}")
    prod = [[ci * qj for qj in qs] for ci in cs]
    L = 1
    for row in prod:
        for x in row:
            L = lcm(L, x.denominator)
    a = [[int(x * L) for x in row] for row in prod]
    g = 0
    for row in a:
        for x in row:
            g = gcd(g, x)
    s = GaussianRational(0)
    for d, qj in zip(ds, qs):
        s = s + d * GaussianRational(qj)
    r = s * L
    if g > 1:
        a = [[x // g for x in row] for row in a]
        r = r / g
    # exp(-b) = exp(-2*pi*i*r)
    return AlgebraicEquation(_exp_two_pi_i(-r, prec), tuple(map(tuple, a)))


@dataclass(frozen=True)
class SMReport:
    algebraic: bool
    numeric_residual: float
    residue_variety: bool
    equations: tuple[AlgebraicEquation, ...]
    equations_hold: tuple[bool, ...]


def _lattice_residual(val, gens: list, bound: int, ctx) -> Any:
    """``min |val - sum n_t g_t|`` over integer ``|n_t| <= bound``, searched
    with LLL on a Kannan embedding."""
    gens = [g for g in gens if abs(g) > 0]
    best = abs(val)
    if not gens or best == 0:
        return best
    W = ctx.mpf(2) ** (ctx.prec // 2)
    size = len(gens)
    rows = []
    for t, g in enumerate(gens):
        row = [0] * (size + 3)
        row[t] = 1
        row[size] = int(ctx.nint(W * g.real))
        row[size + 1] = int(ctx.nint(W * g.imag))
        rows.append(row)
    target = [0] * (size + 3)
    target[size] = int(ctx.nint(W * val.real))
    target[size + 1] = int(ctx.nint(W * val.imag))
    target[size + 2] = 1
    rows.append(target)
    for row in lll_reduce(rows):
        s = row[size + 2]
        if abs(s) != 1:
            continue
        n = [-s * x for x in row[:size]]
        if max(abs(x) for x in n) > bound:
            continue
        res = abs(val - ctx.fsum(x * g for x, g in zip(n, gens)))
        if res < best:
            best = res
    return best


def sm_membership(cfg: DiffConfig, spec: LinearVarietySpec, paths=None,
                  prec: int = DEFAULT_PREC) -> SMReport:
    """Membership of ``cfg`` in ``S_M``.

    ``algebraic`` is the exact test: residue proportionality plus every
    exponentiated row equation.  ``numeric_residual`` is ``max |M phi|`` with
    each ``[A | B]`` row reduced modulo the group generated by
    ``A_ri * 2*pi*i*R_k`` (the ambiguity from the choice of paths), with
    coefficients bounded by 100.
    """
    sig = cfg.signature
    if not sig.simple_poles:
        raise NotSimplePole(f"signature {sig.orders} has a pole of order at least 2")
    if spec.m != cfg.m or spec.n != cfg.n:
        raise ShapeMismatch(f"spec is for m={spec.m}, n={spec.n}; config has m={cfg.m}, n={cfg.n}")
    ratios = spec.residue_ratios()
    in_rq = residue_variety_membership(cfg, ratios)
    eqs = tuple(exponentiate_linear_row(ra, rb, ratios, prec) for ra, rb in zip(spec.A, spec.B))
    holds = tuple(e.holds(cfg) for e in eqs)

    ctx = get_ctx(prec)
    if paths is None:
        paths = [default_path(cfg, j) for j in range(1, cfg.m + 1)]
    rel = [to_mpc(path_integral(cfg, p, prec), ctx) for p in paths]
    tpi = 2j * ctx.pi
    R = [to_mpc(r, ctx) for r in residues(cfg).values]
    phi = rel + [tpi * r for r in R]
    worst = ctx.mpf(0)
    for ra, rb in zip(spec.A, spec.B):
        coeffs = [to_mpc(GaussianRational(a), ctx) for a in ra] + [to_mpc(b, ctx) for b in rb]
        val = ctx.fsum(c * p for c, p in zip(coeffs, phi))
        gens = [to_mpc(GaussianRational(a), ctx) * tpi * r for a in ra if a for r in R]
        worst = max(worst, _lattice_residual(val, gens, CVP_BOUND, ctx))
    for j in range(spec.n):
        val = phi[spec.m + j] + to_mpc(GaussianRational(spec.q[j]), ctx) * phi[spec.m + spec.n]
        worst = max(worst, abs(val))
    return SMReport(in_rq and all(holds), float(worst), in_rq, eqs, holds)


def _recognize_rational(x: Scalar, prec: int) -> Fraction | None:
    if isinstance(x, GaussianRational):
        return x.re if not x.im else None
    ctx = get_ctx(x.prec)
    v = x.value
    tol = ctx.mpf(2) ** (-(min(prec, x.prec) // 2))
    if abs(v.imag) > tol * max(1, abs(v)):
        return None
    cand = _to_fraction(ctx.mpf(v.real)).limit_denominator(10 ** 12)
    if abs(v.real - ctx.mpf(cand.numerator) / cand.denominator) > tol * max(1, abs(v)):
        return None
    return cand


def teichmueller_curve_from_point(cfg: DiffConfig, paths=None, prec: int = DEFAULT_PREC,
                                  real_tol: float = 1e-9) -> LinearVarietySpec:
    """The curve ``S_M`` through ``cfg`` with ``b_i = 0`` and
    ``p_i = -int_{x_0}^{x_i} omega`` after rescaling so ``2*pi*i*R_n = 1``.

    The rows are ``int_i + p_i * 2*pi*i*R_n = 0`` for ``i < m`` and
    ``R_{j-1} + q_j R_n = 0``, leaving a 2-dimensional solution space.
    """
    sig = cfg.signature
    if not sig.simple_poles:
        raise NotSimplePole(f"signature {sig.orders} has a pole of order at least 2")
    if cfg.n < 0:
        raise NonRationalResidueRatios("no finite poles")
    R = residues(cfg).values
    if not R[-1]:
        raise NonRationalResidueRatios("R_n vanishes")
    q = []
    for r in R[:-1]:
        ratio = _recognize_rational(r / R[-1], prec)
        if ratio is None:
            raise NonRationalResidueRatios(f"R/R_n = {complex(r / R[-1])} is not rational")
        q.append(-ratio)
    ctx = get_ctx(prec)
    scale = 1 / (2j * ctx.pi * to_mpc(R[-1], ctx))
    if paths is None:
        paths = [default_path(cfg, j) for j in range(1, cfg.m + 1)]
    p = []
    for path in paths:
        v = to_mpc(path_integral(cfg, path, prec), ctx) * scale
        if abs(v.imag) > real_tol * max(1, abs(v)):
            raise NonRealPeriods(f"relative period {complex(v)} is not real after normalization")
        p.append(-ctx.mpf(v.real))
    m, n = cfg.m, cfg.n
    A = [[int(i == c) for c in range(m)] for i in range(m - 1)]
    zero = GaussianRational(0)
    B = [[zero] * n + [BigComplex(p[i], prec)] for i in range(m - 1)]
    return LinearVarietySpec(A, B, q, m=m)


def normalized_for_teichmueller(cfg: DiffConfig, prec: int = DEFAULT_PREC) -> DiffConfig:
    """``cfg`` rescaled so that ``2*pi*i*R_n = 1``."""
    ctx = get_ctx(prec)
    R_n = to_mpc(residues(cfg).values[-1], ctx)
    return cfg.scaled(BigComplex(1 / (2j * ctx.pi * R_n), prec))


# covers, pullbacks and log differentials

INFINITY = "inf"


def _is_inf(x) -> bool:
    return isinstance(x, str)


@dataclass(frozen=True)
class CoverSpec:
    """A rational map ``f`` with its ramification: ``(point, local degree)``
    for every critical point, ``point`` being ``"inf"`` for infinity."""

    map: RationalFunction
    ramification: tuple[tuple[Any, int], ...] = field(default=())

    def __init__(self, f: RationalFunction, ramification: Sequence[tuple[Any, int]] | None = None):
        if not f.is_exact:
            raise InputError("covering maps must have Gaussian-rational coefficients")
        if max(f.numerator.degree, f.denominator.degree) < 1:
            raise ConstantMap("the covering map is constant")
        computed = tuple(ramification_points(f))
        if ramification is not None:
            given = [(INFINITY if _is_inf(p) else scalar(p), int(e)) for p, e in ramification]
            if not _same_ramification(given, computed):
                raise InputError("ramification data does not match the map")
        object.__setattr__(self, "map", f)
        object.__setattr__(self, "ramification", computed)

    @property
    def degree(self) -> int:
        return max(self.map.numerator.degree, self.map.denominator.degree)


def _same_ramification(a, b) -> bool:
    if len(a) != len(b):
        return False
    rest = list(b)
    for p, e in a:
        for i, (p2, e2) in enumerate(rest):
            if _is_inf(p) or _is_inf(p2):
                same = _is_inf(p) and _is_inf(p2)
            else:
                same = approx_equal(p, p2, 1e-20)
            if same and e == e2:
                del rest[i]
                break
        else:
            return False
    return True


def _value_at_infinity(f: RationalFunction):
    """``(f(inf), local degree at inf)``."""
    N, D = f.numerator, f.denominator
    dn, dd = N.degree, D.degree
    if dn > dd:
        return INFINITY, dn - dd
    if dn < dd:
        return GaussianRational(0), dd - dn
    v = N.leading / D.leading
    return v, dd - (N - D * v).degree


def _finite_critical_part(f: RationalFunction) -> Polynomial:
    """``N'D - ND'`` with the factors coming from poles of ``f`` removed."""
    N, D = f.numerator, f.denominator
    W = N.derivative() * D - N * D.derivative()
    for g, k in squarefree_decomposition(D):
        for _ in range(k - 1):
            W = W // g
    return W


def ramification_points(f: RationalFunction, prec: int = DEFAULT_PREC) -> list[tuple[Any, int]]:
    out: list[tuple[Any, int]] = []
    for p, k in roots_with_multiplicity(_finite_critical_part(f), prec):
        out.append((p, k + 1))
    for p, k in roots_with_multiplicity(f.denominator, prec):
        if k > 1:
            out.append((p, k))
    v, e = _value_at_infinity(f)
    if e > 1:
        out.append((INFINITY, e))
    return out


def _f_value(f: RationalFunction, p: Scalar):
    d = f.denominator(p)
    if isinstance(d, GaussianRational) and not d:
        return INFINITY
    return f.numerator(p) / d


def _preimages(f: RationalFunction, b: Scalar, crit: list, prec: int) -> list[tuple[Scalar, int]]:
    """Finite preimages of the finite value ``b`` with local degrees."""
    P = f.numerator - f.denominator * b
    if P.is_exact:
        return roots_with_multiplicity(P, prec)
    over = [(c, e) for c, e, v in crit if not _is_inf(v) and approx_equal(v, b, 2.0 ** (-(prec // 2)))]
    ctx = get_ctx(prec)
    roots = list(numeric_roots(P, prec))
    out = []
    for c, e in over:
        cm = to_mpc(c, ctx)
        for _ in range(e):
            roots.sort(key=lambda r: abs(r - cm))
            roots.pop(0)
        out.append((c, e))
    out.extend((BigComplex(r, prec), 1) for r in roots)
    return out


def config_from_rational_function(g: RationalFunction, prec: int = DEFAULT_PREC) -> DiffConfig:
    """The configuration of ``g(z) dz``: zeros and poles read off the reduced
    numerator and denominator, multiplicities exact over Q(i)."""
    num, den = g.numerator, g.denominator
    if num.is_zero():
        raise ConstantMap("the zero differential has no stratum")
    zeros = roots_with_multiplicity(num, prec)
    poles = roots_with_multiplicity(den, prec)
    inf = den.degree - num.degree - 2
    orders = [e for _, e in zeros] + [-e for _, e in poles] + [inf]
    lam = num.leading / den.leading
    return DiffConfig(orders, lam, [z for z, _ in zeros], [p for p, _ in poles], FREE,
                      exact_form=g if g.is_exact else None)


def dlog_differential(f: RationalFunction, prec: int = DEFAULT_PREC) -> DiffConfig:
    """``df/f`` as a free-normalization configuration."""
    if max(f.numerator.degree, f.denominator.degree) < 1:
        raise ConstantMap("f is constant")
    return config_from_rational_function(f.derivative() / f, prec)


def _is_identity(f: RationalFunction) -> bool:
    return f.denominator == Polynomial.constant(1) and f.numerator == Polynomial.x()


def _probe_point(points: Sequence[Scalar]) -> GaussianRational:
    cands = [GaussianRational(Fraction(1, 3), Fraction(2, 7)),
             GaussianRational(Fraction(-5, 11), Fraction(3, 13)),
             GaussianRational(Fraction(7, 17), Fraction(-9, 19))]
    return max(cands, key=lambda c: min([abs(complex(c) - complex(p)) for p in points] or [1.0]))


def pullback_by_cover(base: DiffConfig, cover: CoverSpec, prec: int = DEFAULT_PREC) -> DiffConfig:
    """``f^* omega`` for the cover ``f``, as a free-normalization config.

    A preimage of local degree ``e`` over a point of order ``o`` gets order
    ``e*(o+1) - 1``; preimages of order 0 are not marked.  Every critical
    value of ``f`` must be a marked point of the base or infinity.
    """
    return pullback_with_residues(base, cover, prec)[0]


def pullback_with_residues(base: DiffConfig, cover: CoverSpec,
                           prec: int = DEFAULT_PREC) -> tuple[DiffConfig, ResidueVector]:
    """The pullback together with its residues, each read off the base as
    ``e * Res_{f(p)} omega``, so they are exact whenever the base residues
    are (even if the preimages themselves are irrational)."""
    f = cover.map
    base_res = residues(base)
    if _is_identity(f):
        return base, base_res
    sig = base.signature
    zero = GaussianRational(0)
    marked = ([(x, o, zero) for x, o in zip(base.zeros, sig.zero_orders)]
              + [(y, -o, r) for y, o, r in zip(base.poles, sig.pole_orders, base_res.values)])
    crit = [(p, e, _value_at_infinity(f)[0] if _is_inf(p) else _f_value(f, p))
            for p, e in cover.ramification]
    for p, e, v in crit:
        if _is_inf(v):
            continue
        if not any(approx_equal(v, b, 2.0 ** (-(prec // 2))) for b, _, _ in marked):
            raise UnmarkedBranchValue(f"critical value {v} is not a marked point")
    finite_crit = [(p, e, v) for p, e, v in crit if not _is_inf(p)]

    up: list[tuple[Scalar, int, Scalar]] = []
    for b, o, r in marked:
        for p, e in _preimages(f, b, finite_crit, prec):
            order = e * (o + 1) - 1
            if order:
                up.append((p, order, r * e))
    o_inf = sig.infinity_order
    for p, e in roots_with_multiplicity(f.denominator, prec):
        order = e * (o_inf + 1) - 1
        if order:
            up.append((p, order, base_res.residue_at_infinity * e))
    inf_order = -2 - sum(o for _, o, _ in up)
    zeros = [(p, o) for p, o, _ in up if o > 0]
    poles = [(p, o, r) for p, o, r in up if o < 0]
    omega = _base_form(base)
    g = omega.compose(f) * f.derivative()
    u0 = _probe_point([p for p, _, _ in up])
    val = g(u0)
    denom = GaussianRational(1)
    for p, o, _ in up:
        denom = denom * ((u0 - p) ** o if o > 0 else GaussianRational(1) / (u0 - p) ** (-o))
    lam = val / denom
    if g.is_exact:
        # numerator and denominator of g are lam and 1 times monic products
        lam = g.numerator.leading / g.denominator.leading
    orders = [o for _, o in zeros] + [o for _, o, _ in poles] + [inf_order]
    cfg = DiffConfig(orders, lam, [p for p, _ in zeros], [p for p, _, _ in poles], FREE,
                     exact_form=g if g.is_exact else None)
    values = tuple(r for _, _, r in poles)
    total = zero
    for r in values:
        total = total + r
    return cfg, ResidueVector(values, -total)


def _base_form(base: DiffConfig) -> RationalFunction:
    from .strata import differential_from_config
    return differential_from_config(base)


# arithmetic points

@dataclass(frozen=True)
class ArithmeticCertificate:
    case: str
    roots_of_unity: tuple[tuple[int, int, int], ...] = ()
    relations: tuple[tuple[int, tuple[int, ...]], ...] = ()
    heuristic: bool = False


def root_of_unity_order(w: GaussianRational, bound: int = ROOT_OF_UNITY_BOUND) -> int | None:
    """Least ``N <= bound`` with ``w**N == 1``, tested exactly."""
    if w.norm() != 1:
        return None
    acc = GaussianRational(1)
    for N in range(1, bound + 1):
        acc = acc * w
        if acc == 1:
            return N
    return None


def arithmetic_point_check(cfg: DiffConfig, paths=None, prec: int = DEFAULT_PREC,
                           root_bound: int = ROOT_OF_UNITY_BOUND,
                           exponent_bound: int = 24) -> tuple[bool, ArithmeticCertificate]:
    """Decide whether the projectivized periods of ``cfg`` are algebraic.

    All residues zero: arithmetic.  Otherwise the algebraic part of every
    relative period must vanish, and the log part
    ``sum_k R_k log w_jk`` must lie in ``2*pi*i`` times an algebraic number.
    Torsion ``w_jk`` contribute rational multiples of ``2*pi*i``; for the
    rest, the residues must lie in the span of their multiplicative
    relations (logs independent over Q are independent over the algebraic
    numbers, so nothing else can cancel).  Relations are found by LLL and
    then verified exactly.
    """
    if not cfg.is_exact:
        raise InputError("arithmetic_point_check needs exact Gaussian-rational data")
    R = residues(cfg).values
    if not any(R):
        return True, ArithmeticCertificate("all-residues-zero")
    falg = algebraic_period_part(cfg)
    if any(falg):
        return False, ArithmeticCertificate("algebraic-part-nonzero")
    if cfg.m < 1:
        return True, ArithmeticCertificate("no-relative-periods")
    w = torus_coordinates(cfg).w
    torsion = []
    relations = []
    used_lll = False
    arithmetic = True
    for j, row in enumerate(w, start=1):
        free = []
        for k, x in enumerate(row):
            N = root_of_unity_order(x, root_bound)
            if N is not None:
                torsion.append((j, k, N))
            elif R[k]:
                free.append(k)
        if not free:
            continue
        used_lll = True
        ctx = get_ctx(prec)
        logs = [ctx.log(to_mpc(row[k], ctx)) for k in free]
        found = _find_relations([logs], len(free), exponent_bound, prec)
        verified = []
        for a in found:
            acc = GaussianRational(1)
            for k, e in zip(free, a):
                if e:
                    acc = acc * row[k] ** e
            if acc == 1:
                full = [0] * len(row)
                for k, e in zip(free, a):
                    full[k] = e
                verified.append(a)
                relations.append((j, tuple(full)))
        target = [R[k] for k in free]
        span = [[GaussianRational(e) for e in a] for a in verified]
        if not span or rank_exact(span + [target]) != len(span) or rank_exact(span) != len(span):
            arithmetic = False
    case = "log-part-in-residue-span" if arithmetic else "log-part-independent"
    return arithmetic, ArithmeticCertificate(case, tuple(torsion), tuple(relations), used_lll)
