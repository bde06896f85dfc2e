import random
from fractions import Fraction as F

import pytest

from merodiff.exact import GaussianRational, Polynomial, RationalFunction
from merodiff.strata import DiffConfig, canonicalize

z = Polynomial.x()

MIRROR_SIG = (1, 1, -1, -1, -1, -1)


def mirror(alpha, lam=1):
    """zeros at -1, 1 and poles at 0, +-alpha, with a simple pole at infinity."""
    return DiffConfig(MIRROR_SIG, lam, [-1, 1], [0, alpha, -alpha])


def mirror_canonical(alpha, lam=1):
    return canonicalize(mirror(alpha, lam))


def random_rational(rng, lo=-9, hi=9, den=7):
    return F(rng.randint(lo * den, hi * den), den)


def random_gaussian(rng, lo=-6, hi=6, den=5, imag=True):
    im = random_rational(rng, lo, hi, den) if imag else 0
    return GaussianRational(random_rational(rng, lo, hi, den), im)


def random_points(rng, count, imag=True, spread=6, min_gap=F(1, 4)):
    """``count`` distinct Gaussian rationals that stay ``min_gap`` apart."""
    pts = []
    while len(pts) < count:
        p = random_gaussian(rng, -spread, spread, 4, imag)
        if all(abs(complex(p - q)) >= min_gap for q in pts):
            pts.append(p)
    return pts


def random_config(rng, orders, imag=True, canonical=False):
    n_zero = sum(1 for o in orders[:-1] if o >= 0)
    n_pole = len(orders) - 1 - n_zero
    pts = random_points(rng, n_zero + n_pole, imag)
    lam = random_gaussian(rng, 1, 4, 3, imag)
    cfg = DiffConfig(orders, lam, pts[:n_zero], pts[n_zero:])
    return canonicalize(cfg) if canonical else cfg


@pytest.fixture
def rng():
    return random.Random(20240611)


def rf(num, den=1):
    return RationalFunction(num, den)
