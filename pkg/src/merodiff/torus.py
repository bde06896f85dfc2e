"""Torus coordinates ``w_ij = (y_j - x_i)/(y_j - x_0)`` and what is built on
them: the twisted algebraic period map, fiber rank, multiplicative-relation
detection and the numerical bi-algebraicity rank test.

Exponent vectors and lattice rows are flattened row-major, index
``i*(n+1) + j`` for ``i = 1..m`` (shifted to start at 0) and ``j = 0..n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .errors import (InputError, NotCanonical, PrecisionTooLow, RankUnstable,
                     ShapeMismatch, ZeroCoordinate)
from .exact import GaussianRational, Scalar, all_exact, approx_equal, scalar
from .linalg import (hnf, integer_kernel, lll_reduce, rank_exact,
                     rank_numeric)
from .numeric import DEFAULT_PREC, BigComplex, get_ctx, to_mpc
from .periods import (PeriodVector, _tracked_log_mpc, algebraic_period_part,
                      default_path)
from .strata import DiffConfig, ResidueVector, canonicalize, residues


@dataclass(frozen=True)
class TorusPoint:
    """Embedded point: an ``m x (n+1)`` matrix of nonzero scalars and ``lam``."""

    w: tuple[tuple[Scalar, ...], ...]
    lam: Scalar

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.w), len(self.w[0]) if self.w else 0)

    def flat(self) -> list[Scalar]:
        return [x for row in self.w for x in row]

    @property
    def is_exact(self) -> bool:
        return all_exact(self.flat())


def torus_coordinates(cfg: DiffConfig) -> TorusPoint:
    """``w_ij = (y_j - x_i)/(y_j - x_0)``; invariant under affine changes of
    coordinate, so it also makes sense for free-normalization configs."""
    x0 = cfg.zeros[0] if cfg.zeros else GaussianRational(0)
    rows = []
    for x in cfg.zeros[1:]:
        row = []
        for y in cfg.poles:
            den = y - x0
            if not den:
                raise ZeroCoordinate("a pole coincides with x_0")
            w = (y - x) / den
            if not w:
                raise ZeroCoordinate(f"w vanishes: x = y = {x}")
            row.append(w)
        rows.append(tuple(row))
    return TorusPoint(tuple(rows), cfg.lam)


def embed(cfg: DiffConfig) -> TorusPoint:
    if not cfg.is_canonical:
        raise NotCanonical("the torus embedding needs a canonical configuration")
    for y in cfg.poles:
        if not y:
            raise ZeroCoordinate("y_j = 0")
    return torus_coordinates(cfg)


def closure_relations_hold(tp: TorusPoint) -> bool:
    """``(w_i0 - 1)(w_i'j - 1) = (w_i'0 - 1)(w_ij - 1)`` for all i, i', j."""
    w = tp.w
    for i in range(len(w)):
        for i2 in range(len(w)):
            for j in range(len(w[i])):
                lhs = (w[i][0] - 1) * (w[i2][j] - 1)
                rhs = (w[i2][0] - 1) * (w[i][j] - 1)
                if not approx_equal(lhs, rhs):
                    return False
    return True


@dataclass(frozen=True)
class AffineLattice:
    """``offset + span(basis)``: integer rows spanning ``V^lin ∩ Z^k``."""

    basis: tuple[tuple[int, ...], ...]
    offset: tuple[Any, ...] | None = None
    shape: tuple[int, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(tuple(int(x) for x in r) for r in self.basis))
        if self.basis and rank_exact(self.basis) != len(self.basis):
            raise ShapeMismatch("lattice basis rows are linearly dependent")
        if self.shape is not None:
            k = self.shape[0] * self.shape[1]
            if any(len(r) != k for r in self.basis):
                raise ShapeMismatch(f"basis rows must have length {k}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def full(cls, m: int, n1: int) -> AffineLattice:
        k = m * n1
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)), None, (m, n1))

    @classmethod
    def from_relations(cls, relations: Sequence[Sequence[int]], shape: tuple[int, int],
                       offset=None) -> AffineLattice:
        """The subspace cut out by exponent relations: their integer kernel."""
        k = shape[0] * shape[1]
        return cls(tuple(map(tuple, integer_kernel([list(r) for r in relations], k))), offset, shape)


@dataclass(frozen=True)
class TwistedPeriodInput:
    s: DiffConfig
    v: tuple[tuple[Any, ...], ...]


def twisted_map_from_parts(falg: Sequence[Any], res: Sequence[Any],
                           v: Sequence[Sequence[Any]], prec: int = DEFAULT_PREC) -> PeriodVector:
    """``(F^alg_i + 2*pi*i * R.v_i, 2*pi*i*R)`` from its ingredients."""
    if len(v) != len(falg) or any(len(row) != len(res) for row in v):
        raise ShapeMismatch(f"v must have shape ({len(falg)}, {len(res)})")
    ctx = get_ctx(prec)
    tpi = 2j * ctx.pi
    R = [to_mpc(r, ctx) for r in res]
    rel = []
    for f, row in zip(falg, v):
        acc = to_mpc(f, ctx)
        acc += tpi * ctx.fsum(r * to_mpc(x, ctx) for r, x in zip(R, row))
        rel.append(BigComplex(acc, prec))
    return PeriodVector(tuple(rel), tuple(BigComplex(tpi * r, prec) for r in R))


def _reshape(v: Sequence[Any], m: int, n1: int) -> list[list[Any]]:
    if v and not isinstance(v[0], (list, tuple)):
        if len(v) != m * n1:
            raise ShapeMismatch(f"v must have {m * n1} entries, got {len(v)}")
        return [list(v[i * n1:(i + 1) * n1]) for i in range(m)]
    if len(v) != m or any(len(row) != n1 for row in v):
        raise ShapeMismatch(f"v must have shape ({m}, {n1})")
    return [list(row) for row in v]


def twisted_period_map(inp: TwistedPeriodInput, prec: int = DEFAULT_PREC) -> PeriodVector:
    s = inp.s
    if not s.is_canonical:
        raise NotCanonical("the twisted period map needs a canonical configuration")
    v = _reshape(inp.v, max(s.m, 0), s.n + 1) if s.m > 0 else []
    return twisted_map_from_parts(algebraic_period_part(s), residues(s).values, v, prec)


def torus_logs(cfg: DiffConfig, paths=None, prec: int = DEFAULT_PREC) -> list[list[BigComplex]]:
    """Logs of ``w_ij`` continued along the paths ``x_0 -> x_i``, divided by
    ``2*pi*i``; the point of ``V`` lying over ``cfg`` on the graph of exp."""
    ctx = get_ctx(prec)
    if paths is None:
        paths = [default_path(cfg, i) for i in range(1, cfg.m + 1)]
    tpi = 2j * ctx.pi
    return [[BigComplex(_tracked_log_mpc(y, p, ctx) / tpi, prec) for y in cfg.poles] for p in paths]


def principal_logs(tp: TorusPoint, prec: int = DEFAULT_PREC) -> list:
    ctx = get_ctx(prec)
    return [ctx.log(to_mpc(w, ctx)) for w in tp.flat()]


def fiber_rank(R: ResidueVector | Sequence[Any], V: AffineLattice,
               prec: int = DEFAULT_PREC) -> int:
    """Rank of ``v -> (R.v_1, ..., R.v_m)`` on ``V^lin``."""
    values = list(R.values) if isinstance(R, ResidueVector) else [scalar(r) for r in R]
    n1 = len(values)
    if not V.basis:
        return 0
    k = len(V.basis[0])
    if n1 == 0 or k % n1:
        raise ShapeMismatch(f"lattice rows of length {k} do not split into blocks of {n1}")
    if V.shape is not None and V.shape[1] != n1:
        raise ShapeMismatch(f"lattice shape {V.shape} does not match {n1} residues")
    m = k // n1
    cols = []
    for b in V.basis:
        col = []
        for i in range(m):
            acc = GaussianRational(0)
            for r, x in zip(values, b[i * n1:(i + 1) * n1]):
                if x:
                    acc = acc + r * x
            col.append(acc)
        cols.append(col)
    M = [[cols[c][i] for c in range(len(cols))] for i in range(m)]
    if all_exact(values):
        return rank_exact(M)
    size = max(abs(complex(r)) for r in values) * max(abs(x) for b in V.basis for x in b)
    return rank_numeric(M, prec, scale=size)


@dataclass(frozen=True)
class RelationLattice:
    """Integer exponent vectors ``a`` with ``prod w^a`` constant over the
    samples (or equal to 1 for a single sample), in Hermite normal form."""

    basis: tuple[tuple[int, ...], ...]
    shape: tuple[int, int]
    prec: int
    heuristic: bool = True

    def contains(self, a: Sequence[int]) -> bool:
        if not self.basis:
            return not any(a)
        return rank_exact(list(self.basis) + [list(a)]) == len(self.basis) and \
            _in_integer_span(self.basis, a)


def _in_integer_span(basis, a) -> bool:
    H = hnf(list(basis))
    v = list(a)
    for row in H:
        piv = next(i for i, x in enumerate(row) if x)
        if v[piv] % row[piv]:
            return False
        q = v[piv] // row[piv]
        v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def _find_relations(constraints: list[list], k: int, bound: int, prec: int) -> list[list[int]]:
    """Integer ``a`` with ``sum a_i c_i`` in ``2*pi*i*Z`` for every constraint
    vector ``c``, via LLL on a Kannan-style embedding."""
    ctx = get_ctx(prec)
    T = len(constraints)
    W = ctx.mpf(2) ** (prec * 3 // 4)
    width = k + 2 * T
    rows = []
    for i in range(k):
        row = [0] * width
        row[i] = 1
        for t, c in enumerate(constraints):
            row[k + 2 * t] = int(ctx.nint(W * c[i].real))
            row[k + 2 * t + 1] = int(ctx.nint(W * c[i].imag))
        rows.append(row)
    for t in range(T):
        row = [0] * width
        row[k + 2 * t + 1] = int(ctx.nint(W * 2 * ctx.pi))
        rows.append(row)
    reduced = lll_reduce(rows)
    threshold = ctx.mpf(2) ** (-(prec // 2))
    tpi = 2j * ctx.pi
    found = []
    for row in reduced:
        a = row[:k]
        if not any(a) or max(abs(x) for x in a) > bound:
            continue
        ok = True
        for c in constraints:
            s = ctx.fsum(x * ci for x, ci in zip(a, c) if x)
            t = ctx.nint(s.imag / (2 * ctx.pi))
            if abs(s - tpi * t) > threshold:
                ok = False
                break
        if ok:
            found.append(a)
    return hnf(found) if found else []


def _constraints(points: Sequence[TorusPoint], prec: int) -> list[list]:
    logs = [principal_logs(p, prec) for p in points]
    if len(logs) == 1:
        return [logs[0]]
    return [[a - b for a, b in zip(l, logs[0])] for l in logs[1:]]


def detect_multiplicative_relations(points: Sequence[TorusPoint], exponent_bound: int = 12,
                                    prec: int = DEFAULT_PREC) -> RelationLattice:
    """Heuristic search for multiplicative relations among torus coordinates.

    With several samples, relations make ``prod w^a`` constant across them;
    with one sample they make it equal to 1.  The lattice is computed at two
    working precisions (``prec`` and ``2*prec``, or half and full precision
    of floating inputs) and must agree at both.
    """
    if not points:
        raise InputError("need at least one sample point")
    if exponent_bound < 1:
        raise InputError("exponent_bound must be at least 1")
    shape = points[0].shape
    if any(p.shape != shape for p in points):
        raise ShapeMismatch("sample points have different shapes")
    k = shape[0] * shape[1]
    if k == 0:
        return RelationLattice((), shape, prec)
    floats = [w.prec for p in points for w in p.flat() if isinstance(w, BigComplex)]
    if floats:
        top = min(floats)
        levels = (max(top // 2, 64), top)
    else:
        levels = (prec, 2 * prec)
    results = [_find_relations(_constraints(points, lv), k, exponent_bound, lv) for lv in levels]
    if results[0] != results[1]:
        raise PrecisionTooLow(
            f"relation lattice changed between {levels[0]} and {levels[1]} bits")
    return RelationLattice(tuple(map(tuple, results[1])), shape, levels[1])


@dataclass(frozen=True)
class ConfigFamily:
    """A holomorphic family ``params -> DiffConfig``.

    ``build`` receives a list of scalars and must work with exact and
    floating inputs alike; ``sample`` draws parameters (preferably exact)
    from a seeded :class:`random.Random`.
    """

    param_count: int
    build: Callable[[Sequence[Any]], DiffConfig]
    sample: Callable[[random.Random], Sequence[Any]]
    name: str = ""


@dataclass(frozen=True)
class RankReport:
    dim_S: int
    dim_ASV: int
    fib: int
    verdict: str
    heuristic: bool
    samples: tuple[tuple[int, int], ...] = field(default=())
    inequalities_hold: bool = True
    lattice: AffineLattice | None = None


def _align(cfg: DiffConfig, ref: DiffConfig) -> DiffConfig:
    """Reorder marked points of equal order to follow ``ref`` (greedy
    nearest match), so finite differences compare like with like."""

    def order(points, orders, ref_points):
        pts = list(points)
        out = []
        for rp, o in zip(ref_points, orders):
            cands = [i for i, p in enumerate(pts) if p is not None and orders[i] == o]
            best = min(cands, key=lambda i: abs(complex(pts[i]) - complex(rp)))
            out.append(pts[best])
            pts[best] = None
        return out

    sig = cfg.signature
    zeros = order(cfg.zeros, sig.zero_orders, ref.zeros)
    poles = order(cfg.poles, sig.pole_orders, ref.poles)
    return cfg.replace(zeros=zeros, poles=poles)


def _canonical(cfg: DiffConfig) -> DiffConfig:
    return cfg if cfg.is_canonical else canonicalize(cfg)


def _jacobian_rank(family: ConfigFamily, params: Sequence[Any], V: AffineLattice,
                   prec: int) -> tuple[int, int]:
    ctx = get_ctx(prec)
    base_raw = family.build([scalar(p) for p in params])
    base = _canonical(base_raw)
    tp = embed(base)
    m, n1 = tp.shape
    tpi = 2j * ctx.pi
    v0 = [lg / tpi for lg in principal_logs(tp, prec)]
    h = ctx.mpf(2) ** (-(prec // 3))

    def A(cfg: DiffConfig, v: list) -> list:
        falg = algebraic_period_part(cfg)
        res = residues(cfg).values
        vv = [v[i * n1:(i + 1) * n1] for i in range(m)]
        pv = twisted_map_from_parts(falg, res, vv, prec)
        return [x.value for x in pv.as_tuple()]

    def shifted(a: int, sign: int) -> DiffConfig:
        p = [BigComplex(to_mpc(scalar(x), ctx), prec) for x in params]
        p[a] = p[a] + sign * h
        return _canonical(_align(family.build(p), base_raw))

    cols = []
    for a in range(family.param_count):
        plus, minus = A(shifted(a, 1), v0), A(shifted(a, -1), v0)
        cols.append([(x - y) / (2 * h) for x, y in zip(plus, minus)])
    res = residues(base).values
    for b in V.basis:
        col = [tpi * ctx.fsum(to_mpc(r, ctx) * b[i * n1 + j] for j, r in enumerate(res))
               for i in range(m)]
        cols.append(col + [ctx.mpc(0)] * n1)
    J = [[cols[c][r] for c in range(len(cols))] for r in range(len(cols[0]))]
    return rank_numeric(J, prec), fiber_rank(residues(base), V, prec)


def bialgebraicity_rank_test(family: ConfigFamily, V: AffineLattice | None = None,
                             samples: int = 4, seed: int = 0, prec: int = DEFAULT_PREC,
                             exponent_bound: int = 6) -> RankReport:
    """Compare ``dim S`` with the generic rank of ``(s, v) -> A(s, v)`` on
    ``S x V``.

    Ranks come from central-difference Jacobians at ``samples`` seeded points
    and must agree at ``prec`` and ``2*prec`` bits.  Without ``V`` the
    minimal translated subspace is estimated from multiplicative relations
    among sampled torus points.
    """
    rng = random.Random(seed)
    points = [list(family.sample(rng)) for _ in range(samples)]
    heuristic = V is None
    if V is None:
        probe = [embed(_canonical(family.build(list(family.sample(rng))))) for _ in range(max(3, samples))]
        rel = detect_multiplicative_relations(probe, exponent_bound, prec)
        V = AffineLattice.from_relations(rel.basis, probe[0].shape)
    per_sample = []
    for p in points:
        lo = _jacobian_rank(family, p, V, prec)
        hi = _jacobian_rank(family, p, V, 2 * prec)
        if lo != hi:
            raise RankUnstable(f"rank {lo} at {prec} bits but {hi} at {2 * prec} bits")
        per_sample.append(lo)
    dim_asv = max(r for r, _ in per_sample)
    fib = max(f for _, f in per_sample)
    dim_s = family.param_count
    ineq = all(f <= r and dim_s <= r for r, f in per_sample)
    verdict = "bi-algebraic-consistent" if dim_asv == dim_s else "not-bi-algebraic"
    return RankReport(dim_s, dim_asv, fib, verdict, heuristic, tuple(per_sample), ineq, V)
