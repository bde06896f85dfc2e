"""Periods of a configuration: closed forms, branch-tracked logarithms and a
quadrature oracle.

A relative period along a path is ``G(end) - G(start) + sum_k R_k L_k``
where ``G`` is the single-valued antiderivative of the non-logarithmic part
of the partial-fraction form and ``L_k`` is the logarithm of ``z - y_k``
continued along the path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Sequence

from mpmath.calculus.quadrature import GaussLegendre

from .errors import InputError, PathThroughSingularity, ToleranceNotMet
from .exact import (GaussianRational, Polynomial, Scalar, approx_equal,
                    scalar)
from .numeric import DEFAULT_PREC, BigComplex, get_ctx, to_mpc
from .strata import DiffConfig, partial_fraction_form, residues

GUARD = 1e-6
MIN_DETOUR = 1e-3
DETOUR_SIDES = 16
QUAD_BUDGET = 4000


def _c(x) -> complex:
    return complex(x)


def _rational_point(z: complex) -> GaussianRational:
    return GaussianRational(Fraction(z.real), Fraction(z.imag))


def _segment_distance(a: complex, p: complex, q: complex) -> tuple[float, float]:
    """Distance from ``a`` to segment ``[p, q]`` and the projection parameter."""
    d = q - p
    t = ((a - p) * d.conjugate()).real / abs(d) ** 2
    tc = min(1.0, max(0.0, t))
    return abs(a - (p + tc * d)), t


@dataclass(frozen=True)
class IntegrationPath:
    """A polyline; ``detour_radius`` records the radius used for pole detours
    (``None`` when none were inserted).  Detours always run counterclockwise
    around the avoided point."""

    waypoints: tuple[Scalar, ...]
    detour_radius: float | None = None
    orientation: str = "ccw"

    def __init__(self, waypoints: Iterable[Any], detour_radius: float | None = None,
                 orientation: str = "ccw"):
        pts: list[Scalar] = []
        for w in waypoints:
            w = scalar(w)
            if not pts or not approx_equal(pts[-1], w):
                pts.append(w)
        if not pts:
            raise InputError("a path needs at least one waypoint")
        object.__setattr__(self, "waypoints", tuple(pts))
        object.__setattr__(self, "detour_radius", detour_radius)
        object.__setattr__(self, "orientation", orientation)

    @classmethod
    def straight(cls, *points: Any) -> IntegrationPath:
        return cls(points)

    @classmethod
    def avoiding(cls, points: Sequence[Any], singularities: Iterable[Any],
                 guard: float = GUARD, sides: int = DETOUR_SIDES) -> IntegrationPath:
        """Polyline through ``points`` with a counterclockwise polygonal detour
        around every singularity closer than ``guard`` to a segment.

        The detour radius is ``max(1e-3, d/2)`` with ``d`` the distance to the
        nearest other singularity, capped at half the distance to the
        segment's endpoints.
        """
        pts = [scalar(p) for p in points]
        sing = [_c(s) for s in singularities]
        out: list[Scalar] = [pts[0]]
        used: list[float] = []
        for P, Q in zip(pts, pts[1:]):
            p, q = _c(P), _c(Q)
            if p == q:
                continue
            hits = []
            for a in sing:
                d, t = _segment_distance(a, p, q)
                if d < guard:
                    if min(abs(a - p), abs(a - q)) < guard:
                        raise PathThroughSingularity(f"path endpoint lies on singularity {a}")
                    hits.append((t, a, d))
            u = (q - p) / abs(q - p)
            for t, a, d in sorted(hits, key=lambda h: h[0]):
                others = [abs(a - b) for b in sing if b != a]
                d_other = min(others) if others else math.inf
                d_end = min(abs(a - p), abs(a - q))
                r = min(max(MIN_DETOUR, d_other / 2), d_end / 2)
                if r >= d_other or r * math.cos(math.pi / sides) <= 2 * guard:
                    raise PathThroughSingularity(f"no room for a detour around {a}")
                foot = p + t * (q - p)
                h = math.sqrt(r * r - d * d)
                entry, exit_ = foot - h * u, foot + h * u
                th1 = cmath.phase(entry - a)
                span = (cmath.phase(exit_ - a) - th1) % (2 * math.pi)
                for k in range(sides + 1):
                    out.append(_rational_point(a + r * cmath.exp(1j * (th1 + span * k / sides))))
                used.append(r)
            out.append(Q)
        return cls(out, detour_radius=min(used) if used else None)

    @classmethod
    def loop_around(cls, base: Any, center: Any, sides: int = DETOUR_SIDES) -> IntegrationPath:
        """Closed counterclockwise polygon through ``base`` centred at
        ``center``; it also encloses anything closer to ``center`` than
        ``base`` is (see :meth:`lasso`)."""
        b, c = _c(base), _c(center)
        pts: list[Any] = [scalar(base)]
        for k in range(1, sides):
            pts.append(_rational_point(c + (b - c) * cmath.exp(2j * math.pi * k / sides)))
        pts.append(scalar(base))
        return cls(pts)

    @classmethod
    def lasso(cls, base: Any, center: Any, singularities: Iterable[Any] = (),
              radius: float | None = None, sides: int = DETOUR_SIDES) -> IntegrationPath:
        """Closed path from ``base`` that winds once counterclockwise around
        ``center`` and around none of ``singularities``.

        The tail runs out to a small circle and back along itself, with
        detours around singularities it passes.
        """
        b, c = _c(base), _c(center)
        others = [s for s in (_c(x) for x in singularities) if abs(s - c) > 0]
        if radius is None:
            near = min((abs(s - c) for s in others), default=math.inf)
            radius = min(near, abs(b - c)) / 2
        u = (b - c) / abs(b - c)
        foot = _rational_point(c + radius * u)
        tail = cls.avoiding([base, foot], others)
        circle = [foot] + [_rational_point(c + radius * u * cmath.exp(2j * math.pi * k / sides))
                           for k in range(1, sides)] + [foot]
        return tail.then(cls(circle)).then(tail.reversed())

    @property
    def start(self) -> Scalar:
        return self.waypoints[0]

    @property
    def end(self) -> Scalar:
        return self.waypoints[-1]

    def segments(self) -> list[tuple[Scalar, Scalar]]:
        return list(zip(self.waypoints, self.waypoints[1:]))

    def reversed(self) -> IntegrationPath:
        return IntegrationPath(self.waypoints[::-1], self.detour_radius, self.orientation)

    def then(self, other: IntegrationPath) -> IntegrationPath:
        if not approx_equal(self.end, other.start):
            raise InputError("paths do not connect")
        radii = [r for r in (self.detour_radius, other.detour_radius) if r is not None]
        return IntegrationPath(self.waypoints + other.waypoints[1:],
                               min(radii) if radii else None)

    def check_clear_of(self, singularities: Iterable[Any], guard: float = GUARD) -> None:
        """Raise unless every segment keeps at least ``guard`` from each point."""
        sing = [_c(s) for s in singularities]
        pts = [_c(w) for w in self.waypoints]
        for a in sing:
            if len(pts) == 1 and abs(pts[0] - a) < guard:
                raise PathThroughSingularity(f"path passes within {guard} of {a}")
            for p, q in zip(pts, pts[1:]):
                if _segment_distance(a, p, q)[0] < guard:
                    raise PathThroughSingularity(f"path passes within {guard} of {a}")


def default_path(cfg: DiffConfig, j: int) -> IntegrationPath:
    """Straight path from ``x_0`` to ``x_j`` with automatic pole detours."""
    return IntegrationPath.avoiding([cfg.zeros[0], cfg.zeros[j]], cfg.poles)


def _tracked_log_mpc(a, path: IntegrationPath, ctx):
    a = to_mpc(a, ctx)
    total = ctx.mpc(0)
    for p, q in path.segments():
        total += ctx.log((to_mpc(q, ctx) - a) / (to_mpc(p, ctx) - a))
    return total


def tracked_log(a: Any, path: IntegrationPath, prec: int = DEFAULT_PREC,
                guard: float = GUARD) -> BigComplex:
    """``log(end - a) - log(start - a)`` continued along ``path``.

    On a straight segment that misses ``a`` the argument of ``z - a`` moves by
    less than pi, so the principal log of the endpoint ratio is the
    continuous increment; the increments are summed segment by segment.
    """
    path.check_clear_of([a], guard)
    return BigComplex(_tracked_log_mpc(a, path, get_ctx(prec)), prec)


def _antiderivative_parts(cfg: DiffConfig):
    """``(P, terms)`` where ``G = P + sum c / (z - y)**k`` is single-valued."""
    pf = partial_fraction_form(cfg)
    poly = pf.polynomial_part.antiderivative()
    terms = []
    for y, coeffs in pf.pole_terms.items():
        for j, a in enumerate(coeffs, start=1):
            if j >= 2 and a:
                terms.append((y, j - 1, a / GaussianRational(1 - j)))
    return poly, terms


def _eval_G(poly: Polynomial, terms, z: Scalar) -> Scalar:
    acc = poly(z)
    for y, k, c in terms:
        acc = acc + c / (z - y) ** k
    return acc


def _G_difference(cfg: DiffConfig, start: Any, end: Any) -> Scalar:
    poly, terms = _antiderivative_parts(cfg)
    return _eval_G(poly, terms, scalar(end)) - _eval_G(poly, terms, scalar(start))


def algebraic_period_part(cfg: DiffConfig) -> tuple[Scalar, ...]:
    """``F^alg_j = G(x_j) - G(x_0)`` for ``j = 1..m``."""
    if cfg.m < 1:
        return ()
    poly, terms = _antiderivative_parts(cfg)
    g0 = _eval_G(poly, terms, cfg.zeros[0])
    return tuple(_eval_G(poly, terms, x) - g0 for x in cfg.zeros[1:])


def path_integral(cfg: DiffConfig, path: IntegrationPath, prec: int = DEFAULT_PREC,
                  include_lambda: bool = False) -> Scalar:
    """Closed-form integral of the differential along ``path``.

    Exact when every residue vanishes.  ``include_lambda`` multiplies the
    logarithmic part by ``lam`` once more; it exists only to compare the two
    readings of the log term against quadrature.
    """
    path.check_clear_of(cfg.poles)
    alg = _G_difference(cfg, path.start, path.end)
    res = residues(cfg)
    if not any(res.values):
        return alg
    ctx = get_ctx(prec)
    total = to_mpc(alg, ctx)
    lam = to_mpc(cfg.lam, ctx) if include_lambda else 1
    for y, r in zip(cfg.poles, res.values):
        if r:
            total += lam * to_mpc(r, ctx) * _tracked_log_mpc(y, path, ctx)
    return BigComplex(total, prec)


def _check_endpoints(cfg: DiffConfig, j: int, path: IntegrationPath) -> None:
    if not 1 <= j <= cfg.m:
        raise InputError(f"zero index must lie in 1..{cfg.m}, got {j}")
    if not (approx_equal(path.start, cfg.zeros[0]) and approx_equal(path.end, cfg.zeros[j])):
        raise InputError(f"path must run from x_0 to x_{j}")


def closed_form_period(cfg: DiffConfig, j: int, path: IntegrationPath | None = None,
                       prec: int = DEFAULT_PREC) -> Scalar:
    """``F^alg_j + sum_k R_k * tracked_log(y_k, path)``."""
    path = default_path(cfg, j) if path is None else path
    _check_endpoints(cfg, j, path)
    return path_integral(cfg, path, prec)


@lru_cache(maxsize=None)
def _gl_nodes(prec: int):
    ctx = get_ctx(prec + 20)
    nodes = GaussLegendre(ctx).calc_nodes(3, prec + 20)
    out = get_ctx(prec)
    return tuple((out.mpf(x), out.mpf(w)) for x, w in nodes)


def _integrand(cfg: DiffConfig, ctx):
    lam = to_mpc(cfg.lam, ctx)
    zs = [(to_mpc(x, ctx), e) for x, e in zip(cfg.zeros, cfg.signature.zero_orders) if e]
    ps = [(to_mpc(y, ctx), f) for y, f in zip(cfg.poles, cfg.signature.pole_orders)]

    def g(z):
        num = lam
        for x, e in zs:
            num *= (z - x) ** e
        den = 1
        for y, f in ps:
            den *= (z - y) ** f
        return num / den

    return g


def quadrature_integral(cfg: DiffConfig, path: IntegrationPath, tol: float = 1e-12,
                        prec: int = DEFAULT_PREC) -> BigComplex:
    """Adaptive composite Gauss-Legendre integral of the differential.

    Each segment is bisected until a 12-point rule and its two halves agree
    to the segment's share of ``tol``; the pieces are summed left to right,
    so the result is reproducible at fixed precision.
    """
    path.check_clear_of(cfg.poles)
    ctx = get_ctx(prec)
    g = _integrand(cfg, ctx)
    nodes = _gl_nodes(prec)
    segs = path.segments()
    if not segs:
        return BigComplex(0, prec)
    seg_tol = ctx.mpf(tol) / len(segs)
    budget = [QUAD_BUDGET]

    def rule(f, a, b):
        c, h = (a + b) / 2, (b - a) / 2
        s = ctx.mpc(0)
        for x, w in nodes:
            s += w * f(c + h * x)
        return h * s

    def adapt(f, a, b, whole, eps, depth):
        budget[0] -= 1
        if budget[0] < 0 or depth > 50:
            raise ToleranceNotMet(f"quadrature did not reach {tol} within budget")
        mid = (a + b) / 2
        left, right = rule(f, a, mid), rule(f, mid, b)
        if abs(left + right - whole) <= eps:
            return left + right
        return adapt(f, a, mid, left, eps / 2, depth + 1) + adapt(f, mid, b, right, eps / 2, depth + 1)

    total = ctx.mpc(0)
    for P, Q in segs:
        p, q = to_mpc(P, ctx), to_mpc(Q, ctx)
        d = q - p

        def f(t, p=p, d=d):
            return g(p + t * d) * d

        zero, one = ctx.mpf(0), ctx.mpf(1)
        total += adapt(f, zero, one, rule(f, zero, one), seg_tol, 0)
    return BigComplex(total, prec)


def quadrature_period(cfg: DiffConfig, path: IntegrationPath, tol: float = 1e-12,
                      prec: int = DEFAULT_PREC) -> BigComplex:
    """Numeric integral of the differential along ``path``; an oracle for
    :func:`closed_form_period`."""
    return quadrature_integral(cfg, path, tol, prec)


@dataclass(frozen=True)
class PeriodVector:
    """Relative periods, ``2*pi*i`` times the residues, and branch data.

    ``branch_data[j][k]`` is the integer ``(L - Log w)/(2*pi*i)`` where ``L``
    is the tracked log of ``z - y_k`` along the j-th path and ``Log w`` the
    principal log of ``(x_j - y_k)/(x_0 - y_k)``.
    """

    relative: tuple[Scalar, ...]
    scaled_residues: tuple[Scalar, ...]
    branch_data: tuple[tuple[int, ...], ...] = ()

    def __len__(self):
        return len(self.relative) + len(self.scaled_residues)

    def as_tuple(self) -> tuple[Scalar, ...]:
        return self.relative + self.scaled_residues

    def residues(self, prec: int = DEFAULT_PREC) -> tuple[BigComplex, ...]:
        ctx = get_ctx(prec)
        two_pi_i = 2j * ctx.pi
        return tuple(BigComplex(to_mpc(s, ctx) / two_pi_i, prec) for s in self.scaled_residues)


def _branch_integer(cfg: DiffConfig, j: int, k: int, path: IntegrationPath, ctx) -> int:
    y = to_mpc(cfg.poles[k], ctx)
    x0, xj = to_mpc(cfg.zeros[0], ctx), to_mpc(cfg.zeros[j], ctx)
    diff = _tracked_log_mpc(cfg.poles[k], path, ctx) - ctx.log((xj - y) / (x0 - y))
    return int(ctx.nint((diff / (2j * ctx.pi)).real))


def period_vector(cfg: DiffConfig, paths: Sequence[IntegrationPath] | None = None,
                  prec: int = DEFAULT_PREC) -> PeriodVector:
    if paths is None:
        paths = [default_path(cfg, j) for j in range(1, cfg.m + 1)]
    if len(paths) != max(cfg.m, 0):
        raise InputError(f"need {max(cfg.m, 0)} paths, got {len(paths)}")
    ctx = get_ctx(prec)
    rel = tuple(closed_form_period(cfg, j, p, prec) for j, p in enumerate(paths, start=1))
    res = residues(cfg)
    two_pi_i = 2j * ctx.pi
    scaled = tuple(BigComplex(two_pi_i * to_mpc(r, ctx), prec) for r in res.values)
    branch = tuple(tuple(_branch_integer(cfg, j, k, p, ctx) for k in range(cfg.n + 1))
                   for j, p in enumerate(paths, start=1))
    return PeriodVector(rel, scaled, branch)


def lambda_convention_report(cfg: DiffConfig, path: IntegrationPath, tol: float = 1e-12,
                             prec: int = DEFAULT_PREC) -> dict[str, float]:
    """Distance from the quadrature value for the log term read without and
    with an extra factor of ``lam``."""
    quad = quadrature_integral(cfg, path, tol, prec).value
    ctx = get_ctx(prec)
    plain = to_mpc(path_integral(cfg, path, prec), ctx)
    scaled = to_mpc(path_integral(cfg, path, prec, include_lambda=True), ctx)
    return {"without_lambda": float(abs(plain - quad)), "with_lambda": float(abs(scaled - quad))}
