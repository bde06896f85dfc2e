from fractions import Fraction as F

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from merodiff.exact import GaussianRational, Polynomial, RationalFunction, partial_fractions, recompose, rf_eval
from merodiff.linalg import rank_exact
from merodiff.periods import period_vector
from merodiff.strata import DiffConfig, canonicalize, differential_from_config, residues
from merodiff.torus import (AffineLattice, TwistedPeriodInput, closure_relations_hold, embed,
                            fiber_rank, torus_logs, twisted_period_map)
from merodiff.varieties import arithmetic_point_check, dlog_differential

PROFILE = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

small = st.fractions(min_value=-6, max_value=6, max_denominator=6)
gaussians = st.builds(GaussianRational, small, small)
nonzero = gaussians.filter(lambda g: g != 0)
orders = st.integers(min_value=1, max_value=3)


@st.composite
def points(draw, count):
    pts = draw(st.lists(gaussians, min_size=count, max_size=count, unique=True))
    for i, p in enumerate(pts):
        for q in pts[:i]:
            assume(abs(complex(p - q)) > 1e-3)
    return pts


@st.composite
def configs(draw, simple=False):
    """Random exact configs in a stratum with a pole at infinity."""
    if simple:
        npole = draw(st.integers(2, 4))
        zero_orders = draw(st.permutations([1] * (npole - 1) + draw(st.sampled_from([[], [0]]))))
        pole_orders = [1] * npole
    else:
        zero_orders = draw(st.lists(st.integers(0, 3), min_size=1, max_size=3))
        assume(any(zero_orders))
        npole = draw(st.integers(1, 3))
        pole_orders = draw(st.lists(orders, min_size=npole, max_size=npole))
    inf = -2 - sum(zero_orders) + sum(pole_orders)
    assume(inf < 0)
    pts = draw(points(len(zero_orders) + npole))
    mu = tuple(zero_orders) + tuple(-f for f in pole_orders) + (inf,)
    return DiffConfig(mu, draw(nonzero), pts[:len(zero_orders)], pts[len(zero_orders):])


@PROFILE
@given(configs())
def test_residue_theorem_is_exact(cfg):
    res = residues(cfg)
    assert sum(res.values, GaussianRational(0)) + res.residue_at_infinity == 0


@PROFILE
@given(configs())
def test_partial_fractions_roundtrip(cfg):
    f = differential_from_config(cfg)
    den = list(zip(cfg.poles, cfg.signature.pole_orders))
    assert recompose(partial_fractions(f, den)) == f


@PROFILE
@given(configs(), gaussians)
def test_rf_eval_matches_factored_form(cfg, z0):
    assume(z0 not in cfg.poles)
    want = cfg.lam
    for x, e in zip(cfg.zeros, cfg.signature.zero_orders):
        want *= (z0 - x) ** e
    for y, f in zip(cfg.poles, cfg.signature.pole_orders):
        want /= (z0 - y) ** f
    assert rf_eval(differential_from_config(cfg), z0) == want


@PROFILE
@given(configs(), gaussians, nonzero)
def test_residues_are_affine_invariant_and_linear(cfg, b, t):
    a = GaussianRational(F(2, 3), 1)
    moved = DiffConfig(cfg.signature.orders, cfg.lam, [a * x + b for x in cfg.zeros],
                       [a * y + b for y in cfg.poles])
    # under z -> a z + b the residues scale by a**(deg num - deg den + 1)
    k = sum(cfg.signature.zero_orders) - sum(cfg.signature.pole_orders) + 1
    for r, s in zip(residues(cfg).values, residues(moved).values):
        assert s == r * a ** k
    assert residues(cfg.scaled(t)).values == tuple(t * r for r in residues(cfg).values)


@PROFILE
@given(configs())
def test_closure_relations_hold_after_embedding(cfg):
    assume(cfg.signature.m >= 0 and cfg.signature.n >= 0)
    assert closure_relations_hold(embed(canonicalize(cfg)))


@PROFILE
@given(st.lists(nonzero, min_size=2, max_size=4), nonzero)
def test_fiber_rank_is_scale_invariant(R, t):
    V = AffineLattice.full(1, len(R))
    assert fiber_rank(R, V) == fiber_rank([t * r for r in R], V)
    assert fiber_rank(R, V) == rank_exact([R])


@settings(max_examples=15, deadline=None)
@given(configs(simple=True))
def test_twisted_map_agrees_with_periods_on_the_graph(cfg):
    assume(cfg.signature.m >= 1 and cfg.signature.n >= 0)
    cfg = canonicalize(cfg)
    v = tuple(tuple(row) for row in torus_logs(cfg))
    a, b = twisted_period_map(TwistedPeriodInput(cfg, v)), period_vector(cfg)
    for x, y in zip(a.as_tuple(), b.as_tuple()):
        assert abs(complex(x) - complex(y)) < 1e-9


@settings(max_examples=15, deadline=None)
@given(configs(), nonzero)
def test_periods_are_linear_in_lambda(cfg, t):
    assume(cfg.signature.m >= 1)
    a, b = period_vector(cfg), period_vector(cfg.scaled(t))
    for x, y in zip(a.as_tuple(), b.as_tuple()):
        assert abs(complex(y) - complex(t) * complex(x)) <= 1e-9 * max(1.0, abs(complex(y)))


@PROFILE
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-2, 2).filter(bool)),
                min_size=1, max_size=4, unique_by=lambda p: p[0]),
       st.integers(1, 5))
def test_dlog_residues_are_the_orders(roots, lead):
    num = Polynomial.from_roots([(r, e) for r, e in roots if e > 0], lead)
    den = Polynomial.from_roots([(r, -e) for r, e in roots if e < 0])
    f = RationalFunction(num, den)
    assume(f.numerator.degree + f.denominator.degree > 0)
    cfg = dlog_differential(f)
    got = dict(zip(cfg.poles, residues(cfg).values))
    assert got == {GaussianRational(r): e for r, e in roots}
    assert residues(cfg).residue_at_infinity == -sum(e for _, e in roots)


@settings(max_examples=20, deadline=None)
@given(configs(), nonzero)
def test_arithmetic_verdict_is_scale_invariant(cfg, t):
    assume(cfg.signature.m >= 1 and cfg.signature.n <= 1)
    assert arithmetic_point_check(cfg)[0] == arithmetic_point_check(cfg.scaled(t))[0]
