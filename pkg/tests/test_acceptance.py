"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import math
import random
from fractions import Fraction as F

import mpmath
import pytest

from conftest import mirror, mirror_canonical, random_config, random_gaussian, random_rational, rf, z
from oracles import constant_residue_family, mirror_exact_equations_hold, mirror_member_spec
from merodiff.cli import family_from_json
from merodiff.errors import PathThroughSingularity
from merodiff.exact import GaussianRational, Polynomial, RationalFunction
from merodiff.periods import (IntegrationPath, algebraic_period_part, closed_form_period,
                              default_path, path_integral, period_vector, quadrature_period)
from merodiff.strata import DiffConfig, differential_from_config, residues
from merodiff.torus import (AffineLattice, TwistedPeriodInput, bialgebraicity_rank_test,
                            closure_relations_hold, embed, torus_logs, twisted_period_map)
from merodiff.varieties import (CoverSpec, LinearVarietySpec, arithmetic_point_check,
                                dlog_differential, pullback_with_residues, sm_membership)

TOL = 1e-9
SEED = 20240611


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        assert ok, detail
    return emit


def test_criterion_01_residue_theorem(report):
    rng = random.Random(SEED)
    signatures = [(1, 1, -1, -1, -1, -1), (2, -1, -1, -2), (1, 1, 1, -2, -1, -1, -1),
                  (3, -2, -3), (1, 0, 2, -1, -3, -1), (1, 2, -1, -1, -1, -2)]
    count = bad = 0
    for k in range(1200):
        cfg = random_config(rng, signatures[k % len(signatures)], imag=bool(k % 2))
        res = residues(cfg)
        bad += sum(res.values, GaussianRational(0)) + res.residue_at_infinity != 0
        count += 1
    report(1, bad == 0, f"{count} configs over {len(signatures)} signatures, {bad} nonzero residue sums")


def _worst_gap(rng, signatures, count):
    worst = 0.0
    for k in range(count):
        cfg = random_config(rng, signatures[k % len(signatures)])
        for j in range(1, cfg.m + 1):
            path = default_path(cfg, j)
            a = closed_form_period(cfg, j, path)
            b = quadrature_period(cfg, path, 1e-12)
            worst = max(worst, abs(complex(a) - complex(b)))
    return worst


def test_criterion_02_closed_form_matches_quadrature(report):
    rng = random.Random(SEED + 2)
    simple = _worst_gap(rng, [(1, 1, -1, -1, -1, -1), (1, 0, -1, -1, -1), (1, 1, 1, -1, -1, -1, -1, -1)], 100)
    higher = _worst_gap(rng, [(1, 1, -2, -1, -1), (2, 1, -3, -2), (1, 1, 1, -2, -2, -1), (1, 2, -2, -2, -1)], 100)
    fixed = closed_form_period(DiffConfig((1, 1, -2, -2), 1, [0, 1], [2]), 1, IntegrationPath.straight(0, 1))
    fixed_err = abs(complex(fixed) - (2 - 3 * math.log(2)))
    ok = simple < TOL and higher < TOL and fixed_err < 1e-10
    report(2, ok, f"max gap simple {simple:.2e}, higher order {higher:.2e}; "
                  f"int_0^1 z(z-1)/(z-2)^2 off by {fixed_err:.2e}")


def test_criterion_03_branch_law(report):
    rng = random.Random(SEED + 3)
    signatures = [(1, 1, -1, -2, -1), (1, 1, -1, -1, -1, -1), (2, 1, -1, -1, -2, -1)]
    worst, loops = 0.0, 0
    for k in range(10):
        cfg = random_config(rng, signatures[k % 3])
        base = default_path(cfg, 1)
        v0 = complex(closed_form_period(cfg, 1, base))
        for y, r in zip(cfg.poles, residues(cfg).values):
            looped = IntegrationPath.lasso(cfg.zeros[0], y, cfg.poles).then(base)
            shift = complex(closed_form_period(cfg, 1, looped)) - v0
            worst = max(worst, abs(shift - 2j * math.pi * complex(r)))
            loops += 1
    report(3, worst < TOL, f"{loops} loops around poles, max deviation {worst:.2e}")


def test_criterion_04_torus_embedding(report):
    rng = random.Random(SEED + 4)
    signatures = [(1, 1, -1, -1, -1, -1), (1, 2, 1, -1, -2, -1, -2), (2, 1, -2, -1, -2)]
    closure_bad = sum(not closure_relations_hold(embed(random_config(rng, signatures[k % 3], canonical=True)))
                      for k in range(150))
    ex_bad = 0
    for _ in range(50):
        alpha = random_rational(rng, -9, 9, 11)
        if alpha in (0, 1, -1):
            alpha += F(1, 3)
        w = embed(mirror_canonical(alpha)).w[0]
        ex_bad += not (w[0] == -1 and w[1] * w[2] == 1)
    report(4, closure_bad == 0 and ex_bad == 0,
           f"closure failures {closure_bad}/150; mirror-family failures {ex_bad}/50")


def test_criterion_05_graph_compatibility(report):
    rng = random.Random(SEED + 5)
    signatures = [(1, 1, -1, -1, -1, -1), (1, 1, -2, -1, -1), (1, 1, 1, -1, -2, -1, -1), (2, 1, -3, -1, -1)]
    worst = worst_quad = 0.0
    for k in range(50):
        cfg = random_config(rng, signatures[k % 4], canonical=True)
        v = tuple(tuple(row) for row in torus_logs(cfg))
        a = twisted_period_map(TwistedPeriodInput(cfg, v))
        for x, y in zip(a.as_tuple(), period_vector(cfg).as_tuple()):
            worst = max(worst, float(abs(x.value - y.value)))
        # the relative coordinates once more against quadrature along the same paths
        for j, x in enumerate(a.relative, start=1):
            quad = quadrature_period(cfg, default_path(cfg, j), 1e-12)
            worst_quad = max(worst_quad, float(abs(x.value - quad.value)))
    report(5, worst < TOL and worst_quad < TOL,
           f"50 canonical configs, max |A(s, v) - periods| {worst:.2e}, against quadrature {worst_quad:.2e}")


def test_criterion_06a_half_point(report):
    # the stated member: (x_1, y_1) = (1/2, -1/2) on the row with q = (1), c = (1), d = 0
    spec = LinearVarietySpec([[1]], [[0, 0]], [1])
    outcomes = []
    # every simple-pole signature with two zeros and two finite poles; the last
    # one has no pole at infinity, so the point is taken in free normalization
    for mu in ((1, 0, -1, -1, -1), (0, 1, -1, -1, -1), (0, 0, -1, -1, 0)):
        cfg = DiffConfig(mu, 1, [0, F(1, 2)], [1, F(-1, 2)])
        rep = sm_membership(cfg, spec)
        R = residues(cfg).values
        member = rep.algebraic and rep.numeric_residual < 1e-10
        outcomes.append((mu, member, f"R1/R0 = {R[1] / R[0]}, residual {rep.numeric_residual:.2e}"))
    ok = any(member for _, member, _ in outcomes)
    detail = "; ".join(f"{mu}: {'member' if m else 'non-member'} ({d})" for mu, m, d in outcomes)
    report("6a", ok, detail)


def test_criterion_06b_exact_members(report):
    rng = random.Random(SEED + 6)
    worst, failures = 0.0, 0
    for _ in range(20):
        alpha = random_rational(rng, 2, 9, 7)
        lam = random_gaussian(rng, 1, 5, 3)
        cfg = mirror_canonical(alpha, lam)
        assert mirror_exact_equations_hold(cfg, alpha)
        rep = sm_membership(cfg, LinearVarietySpec(*mirror_member_spec(alpha)))
        failures += not (rep.algebraic and rep.residue_variety)
        worst = max(worst, rep.numeric_residual)
    ok = failures == 0 and worst < 1e-10
    report("6b", ok, f"20 exact members, {failures} rejected, max residual {worst:.2e}")


def test_criterion_06c_perturbed_non_members(report):
    rng = random.Random(SEED + 7)
    accepted = 0
    for _ in range(20):
        alpha = random_rational(rng, 2, 9, 7)
        cfg = mirror_canonical(alpha)
        eps = F(rng.randint(1, 50), 1000) * rng.choice([1, -1])
        moved = cfg.replace(zeros=[0, cfg.zeros[1] + eps]) if rng.random() < 0.5 else \
            cfg.replace(poles=[1, cfg.poles[1] + eps, cfg.poles[2]])
        rep = sm_membership(moved, LinearVarietySpec(*mirror_member_spec(alpha)))
        accepted += rep.algebraic or rep.numeric_residual < 1e-10
    report("6c", accepted == 0, f"20 perturbed points, {accepted} wrongly accepted")


def _image_polyline(gamma_pts, f):
    return IntegrationPath([f(u) for u in gamma_pts])


def test_criterion_07_covering_construction(report):
    rng = random.Random(SEED + 8)
    cover = CoverSpec(RationalFunction(z * z))
    unequal, worst, trials = 0, 0.0, 0
    while trials < 20:
        t = random_gaussian(rng, -4, 4, 3)
        x = random_gaussian(rng, -4, 4, 3)
        if t == 0 or x in (0, t) or abs(complex(t)) < 0.5 or abs(complex(x - t)) < 0.3:
            continue
        base = DiffConfig((1, -1, -1, -1), random_gaussian(rng, 1, 4, 3), [x], [0, t])
        cfg, res = pullback_with_residues(base, cover)
        # a straight segment upstairs against the polyline through its images downstairs
        u0, u1 = random_gaussian(rng, -3, 3, 5), random_gaussian(rng, -3, 3, 5)
        pts = [u0 + (u1 - u0) * F(k, 256) for k in range(257)]
        step = max(abs(complex(q) ** 2 - complex(p) ** 2) for p, q in zip(pts, pts[1:]))
        gap = min(abs(complex(p) ** 2 - complex(y)) for p in pts for y in base.poles)
        if gap < 20 * step or min(abs(complex(p) - complex(y)) for p in pts for y in cfg.poles) < 0.05:
            continue
        try:
            up = path_integral(cfg, IntegrationPath.straight(u0, u1))
            down = path_integral(base, _image_polyline(pts, lambda u: u * u))
        except PathThroughSingularity:
            continue
        worst = max(worst, float(abs(up.value - down.value)))
        over_t = [r for y, r in zip(cfg.poles, res.values) if abs(complex(y) ** 2 - complex(t)) < 1e-9]
        unequal += not (len(over_t) == 2 and over_t[0] == over_t[1])
        trials += 1
    fam = family_from_json({"params": ["l", "t"], "mu": [1, -1, -1, -1], "lambda": "l", "zeros": ["1"],
                            "poles": ["0", "t"], "sample": {"l": ["1", "3"], "t": ["2", "5"]},
                            "cover": {"numerator": [0, 0, 1]}}, 256)
    rep = bialgebraicity_rank_test(fam, samples=3)
    ok = unequal == 0 and worst < TOL and rep.dim_S == 2 and rep.fib == 0
    report(7, ok, f"20 bases: unequal residue pairs {unequal}, max period gap {worst:.2e}; "
                  f"rank test dim_S {rep.dim_S}, fib {rep.fib}")


def _local_degree(f, p, ctx):
    """Multiplicity of ``p`` as a root of ``N(z) D(p) - D(z) N(p)``, read off
    from the Taylor coefficients of that polynomial at ``p``."""
    at = p.to_mpc(ctx) if isinstance(p, GaussianRational) else p.value
    num = [c.to_mpc(ctx) for c in f.numerator.coeffs]
    den = [c.to_mpc(ctx) for c in f.denominator.coeffs]
    n_p, d_p = ctx.polyval(num[::-1], at), ctx.polyval(den[::-1], at)
    size = max(len(num), len(den))
    h = [(num[k] if k < len(num) else 0) * d_p - (den[k] if k < len(den) else 0) * n_p for k in range(size)]
    taylor = []
    for j in range(size):
        taylor.append(ctx.fsum(ctx.binomial(k, j) * h[k] * at ** (k - j) for k in range(j, size)))
    scale = max(abs(c) for c in h)
    return next(j for j in range(1, size) if abs(taylor[j]) > ctx.mpf(10) ** -40 * scale)


def test_criterion_08_dlog(report):
    rng = random.Random(SEED + 9)
    ctx = mpmath.mp.clone()
    ctx.prec = 256
    bad_res, bad_zero = 0, 0
    for _ in range(20):
        deg = rng.randint(1, 5)
        roots = [random_gaussian(rng, -3, 3, 2, imag=rng.random() < 0.5) for _ in range(2 * deg)]
        roots = list(dict.fromkeys(roots))
        up = [(r, rng.randint(1, 2)) for r in roots[:rng.randint(1, len(roots) // 2)]]
        down = [(r, rng.randint(1, 2)) for r in roots[len(up):len(up) + rng.randint(0, 2)]]
        while sum(e for _, e in up) > deg:
            up[-1] = (up[-1][0], up[-1][1] - 1) if up[-1][1] > 1 else up.pop()
        while sum(e for _, e in down) > deg:
            down.pop()
        f = RationalFunction(Polynomial.from_roots(up, rng.randint(1, 5)), Polynomial.from_roots(down))
        cfg = dlog_differential(f)
        want = {r: e for r, e in up}
        want.update({r: -e for r, e in down})
        got = dict(zip(cfg.poles, residues(cfg).values))
        bad_res += not (got == want and all(isinstance(v, GaussianRational) and v.im == 0
                                            and v.re.denominator == 1 for v in got.values()))
        for x, e in zip(cfg.zeros, cfg.signature.zero_orders):
            bad_zero += _local_degree(f, x, ctx) - 1 != e
    report(8, bad_res == 0 and bad_zero == 0,
           f"20 maps of degree <= 5: residue mismatches {bad_res}, zero order mismatches {bad_zero}")


def test_criterion_09_arithmetic_points(report):
    rng = random.Random(SEED + 10)
    ex_bad = 0
    for _ in range(10):
        alpha = random_rational(rng, 2, 9, 5)
        ok, cert = arithmetic_point_check(mirror(alpha, random_rational(rng, 1, 5, 3)))
        ex_bad += not (ok and (1, 0, 2) in cert.roots_of_unity and (1, (0, 1, 1)) in cert.relations)
    neg_bad = checked = 0
    while checked < 10:
        cfg = random_config(rng, (1, 1, -2, -1, -1), imag=False)
        if algebraic_period_part(cfg)[0] == 0 or not all(residues(cfg).values):
            continue
        neg_bad += arithmetic_point_check(cfg)[0]
        checked += 1
    exact_bad = 0
    for k in range(10):
        a, b = random_rational(rng, -5, 0, 3), random_rational(rng, 1, 5, 3)
        c = random_rational(rng, 1, 4, 2)
        if k % 2:
            # d(c / ((z - a)(z - b)))
            cfg = DiffConfig((1, -2, -2, 1), -2 * c, [(a + b) / 2], [a, b])
            assert differential_from_config(cfg) == rf(-c * (2 * z - a - b), ((z - a) * (z - b)) ** 2)
        else:
            cfg = DiffConfig((1, 2, -5), c, [a, b], [])
        exact_bad += not arithmetic_point_check(cfg)[0]
    report(9, ex_bad + neg_bad + exact_bad == 0,
           f"mirror-family rejected {ex_bad}/10, F^alg != 0 accepted {neg_bad}/10, "
           f"exact differentials rejected {exact_bad}/10")


def test_criterion_10_rank_criteria(report):
    families = [(constant_residue_family((F(1), F(2), F(-5, 3))), AffineLattice.full(1, 3)),
                (constant_residue_family((F(3), F(-1, 2), F(7, 4))), AffineLattice.full(1, 3)),
                (family_from_json({"params": ["l", "t"], "mu": [1, -1, -1, -1], "lambda": "l",
                                   "zeros": ["1"], "poles": ["0", "t"],
                                   "sample": {"l": ["1", "3"], "t": ["2", "5"]},
                                   "cover": {"numerator": [0, 0, 1]}}, 256), None)]
    lines, ok = [], True
    for k, (fam, V) in enumerate(families):
        lo = bialgebraicity_rank_test(fam, V, samples=3, prec=256)
        hi = bialgebraicity_rank_test(fam, V, samples=3, prec=512)
        stable = (lo.dim_S, lo.dim_ASV, lo.fib) == (hi.dim_S, hi.dim_ASV, hi.fib)
        fiber_ok = k == 2 or lo.dim_ASV == lo.dim_S
        ok &= stable and fiber_ok and lo.inequalities_hold and hi.inequalities_hold
        lines.append(f"family {k}: dim_S {lo.dim_S}, dim_ASV {lo.dim_ASV}, fib {lo.fib}, "
                     f"stable {stable}, inequalities {lo.inequalities_hold and hi.inequalities_hold}")
    report(10, ok, "; ".join(lines))

