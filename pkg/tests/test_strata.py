from fractions import Fraction as F

import pytest

from conftest import MIRROR_SIG, mirror, random_config, rf, z
from merodiff.errors import BadSignature, DegenerateConfig, NotCanonical
from merodiff.exact import GaussianRational, rf_eval
from merodiff.strata import (DiffConfig, canonicalize, differential_from_config,
                             residues, validate_signature)


def test_signature_examples():
    sig = validate_signature((1, 1, -4))
    assert sig.m == 1 and sig.n == -1 and not sig.canonical_ok
    assert validate_signature((1, -1, -1, -1)).simple_poles
    with pytest.raises(BadSignature) as err:
        validate_signature((1, 1, -1))
    assert err.value.total == 1


def test_signature_bookkeeping():
    sig = validate_signature(MIRROR_SIG)
    assert sig.zero_orders == (1, 1)
    assert sig.pole_orders == (1, 1, 1)
    assert sig.infinity_order == -1
    assert (sig.m, sig.n, sig.dimension) == (1, 2, 4)
    with pytest.raises(BadSignature):
        validate_signature((1, -1, 1, -3))


def test_differential_from_config_examples():
    assert differential_from_config(mirror(2)) == rf((z - 1) * (z + 1), z * (z - 2) * (z + 2))
    cfg = DiffConfig((1, 1, -2, -2), 1, [0, 1], [2])
    assert differential_from_config(cfg) == rf(z * (z - 1), (z - 2) ** 2)
    with pytest.raises(DegenerateConfig):
        DiffConfig((1, 1, -2, -2), 1, [0, 0], [2])


def test_config_validation():
    with pytest.raises(DegenerateConfig):
        DiffConfig((1, -1, -2), 0, [0], [1])
    with pytest.raises(BadSignature):
        DiffConfig((1, -1, -2), 1, [0, 2], [1])
    with pytest.raises(NotCanonical):
        DiffConfig((1, -1, -2), 1, [0], [2], "canonical")
    with pytest.raises(NotCanonical):
        DiffConfig((1, 1, -4), 1, [0, 1], [], "canonical")


def test_residue_examples():
    res = residues(mirror(2))
    assert res.values == (F(1, 4), F(3, 8), F(3, 8))
    assert res.residue_at_infinity == -1
    res = residues(DiffConfig((1, 1, -2, -2), 1, [0, 1], [2]))
    assert res.values == (3,) and res.residue_at_infinity == -3
    res = residues(DiffConfig((1, -3), 1, [0], []))
    assert res.values == () and res.residue_at_infinity == 0


def test_residues_match_limit_formula(rng):
    # at a simple pole y: Res = lim (z - y) f = N(y) / D'(y)
    for _ in range(30):
        cfg = random_config(rng, (2, 1, -1, -1, -1, -2))
        f = differential_from_config(cfg)
        dD = f.denominator.derivative()
        for y, r in zip(cfg.poles, residues(cfg).values):
            assert r == f.numerator(y) / dD(y)


def test_canonicalize_preserves_residues_and_normalizes():
    cfg = DiffConfig((1, 1, -2, -1, -1), F(3, 2), [GaussianRational(1, 1), 4], [-2, 5])
    can = canonicalize(cfg)
    assert can.zeros[0] == 0 and can.poles[0] == 1 and can.is_canonical
    # residues of the finite poles are invariant under affine changes of variable
    assert residues(can).values == residues(cfg).values


def test_scaled_is_linear_in_lambda():
    cfg = mirror(3)
    t = GaussianRational(2, -1)
    f, g = differential_from_config(cfg), differential_from_config(cfg.scaled(t))
    assert rf_eval(g, F(1, 3)) == t * rf_eval(f, F(1, 3))
