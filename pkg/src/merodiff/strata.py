"""Stratum signatures, differential configurations and residues.

A configuration ``(lam, zeros, poles)`` stands for the differential

    lam * prod (z - x_i)**e_i / prod (z - y_j)**f_j  dz

on the Riemann sphere, with infinity always last in the signature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import BadSignature, DegenerateConfig, NotCanonical
from .exact import (GaussianRational, PartialFractionForm, Polynomial,
                    RationalFunction, Scalar, all_exact, approx_equal,
                    partial_fractions, scalar)

CANONICAL = "canonical"
FREE = "free"


@dataclass(frozen=True)
class StratumSignature:
    """Orders ``(e_0..e_m, -f_0..-f_n, order_at_infinity)`` summing to -2.

    Zeros (non-negative entries) come first, then the finite poles; the last
    entry always belongs to infinity.  ``m`` and ``n`` are the zero and
    finite-pole counts minus one, so either may be -1.
    """

    orders: tuple[int, ...]

    @property
    def zero_orders(self) -> tuple[int, ...]:
        body = self.orders[:-1]
        k = 0
        while k < len(body) and body[k] >= 0:
            k += 1
        return body[:k]

    @property
    def pole_orders(self) -> tuple[int, ...]:
        """Positive pole orders ``f_j`` of the finite poles."""
        return tuple(-o for o in self.orders[len(self.zero_orders):-1])

    @property
    def infinity_order(self) -> int:
        return self.orders[-1]

    @property
    def m(self) -> int:
        return len(self.zero_orders) - 1

    @property
    def n(self) -> int:
        return len(self.pole_orders) - 1

    @property
    def canonical_ok(self) -> bool:
        """A zero, a finite pole and a pole at infinity are all present."""
        return self.m >= 0 and self.n >= 0 and self.infinity_order < 0

    @property
    def simple_poles(self) -> bool:
        """Every finite pole is simple and infinity is at worst a simple pole."""
        return all(f == 1 for f in self.pole_orders) and self.infinity_order >= -1

    @property
    def dimension(self) -> int:
        """Number of period coordinates, ``m + n + 1``."""
        return self.m + self.n + 1


def validate_signature(orders: Sequence[int]) -> StratumSignature:
    orders = tuple(int(o) for o in orders)
    if not orders:
        raise BadSignature("empty signature", total=0)
    total = sum(orders)
    if total != -2:
        raise BadSignature(f"orders must sum to -2, got {total}", total=total)
    body = orders[:-1]
    seen_pole = False
    for o in body:
        if o < 0:
            seen_pole = True
        elif seen_pole:
            raise BadSignature("zero orders must precede the finite pole orders", total=total)
    return StratumSignature(orders)


def _distinct(points: Sequence[Scalar]) -> None:
    for a in range(len(points)):
        for b in range(a):
            if approx_equal(points[a], points[b]):
                raise DegenerateConfig(f"marked points collide at {points[a]}")


@dataclass(frozen=True)
class DiffConfig:
    """A point ``(lam, x, y)`` of a stratum."""

    signature: StratumSignature
    lam: Scalar
    zeros: tuple[Scalar, ...]
    poles: tuple[Scalar, ...]
    normalization: str = FREE
    exact_form: RationalFunction | None = field(default=None, compare=False, repr=False)

    def __init__(self, signature: Any, lam: Any, zeros: Sequence[Any],
                 poles: Sequence[Any], normalization: str = FREE,
                 exact_form: RationalFunction | None = None):
        sig = signature if isinstance(signature, StratumSignature) else validate_signature(signature)
        zeros = tuple(scalar(x) for x in zeros)
        poles = tuple(scalar(y) for y in poles)
        lam = scalar(lam)
        if len(zeros) != sig.m + 1 or len(poles) != sig.n + 1:
            raise BadSignature(
                f"signature {sig.orders} needs {sig.m + 1} zeros and {sig.n + 1} poles,"
                f" got {len(zeros)} and {len(poles)}", total=sum(sig.orders))
        if not lam:
            raise DegenerateConfig("lambda must be nonzero")
        _distinct(zeros + poles)
        if normalization not in (CANONICAL, FREE):
            raise ValueError(f"unknown normalization {normalization!r}")
        if normalization == CANONICAL:
            if not sig.canonical_ok:
                raise NotCanonical(f"signature {sig.orders} admits no canonical normalization")
            if zeros[0] != 0 or poles[0] != 1:
                raise NotCanonical("canonical mode needs x_0 = 0 and y_0 = 1")
        object.__setattr__(self, "signature", sig)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "normalization", normalization)
        # an exact rational function for omega/dz, kept when the marked points
        # themselves are only known numerically
        object.__setattr__(self, "exact_form", exact_form)

    @property
    def m(self) -> int:
        return self.signature.m

    @property
    def n(self) -> int:
        return self.signature.n

    @property
    def is_exact(self) -> bool:
        return all_exact((self.lam,) + self.zeros + self.poles)

    @property
    def is_canonical(self) -> bool:
        return self.normalization == CANONICAL

    @property
    def marked_points(self) -> tuple[Scalar, ...]:
        return self.zeros + self.poles

    def pole_factorization(self) -> list[tuple[Scalar, int]]:
        return list(zip(self.poles, self.signature.pole_orders))

    def scaled(self, t: Any) -> DiffConfig:
        """The same configuration with ``lam`` multiplied by ``t``."""
        t = scalar(t)
        form = None if self.exact_form is None else self.exact_form * t
        return DiffConfig(self.signature, self.lam * t, self.zeros, self.poles,
                          self.normalization, form)

    def replace(self, *, lam=None, zeros=None, poles=None, normalization=None) -> DiffConfig:
        return DiffConfig(self.signature,
                          self.lam if lam is None else lam,
                          self.zeros if zeros is None else zeros,
                          self.poles if poles is None else poles,
                          self.normalization if normalization is None else normalization)


@dataclass(frozen=True)
class ResidueVector:
    """Residues at the marked finite poles plus the residue at infinity."""

    values: tuple[Scalar, ...]
    residue_at_infinity: Scalar

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __iter__(self):
        return iter(self.values)

    def total(self) -> Scalar:
        acc = self.residue_at_infinity
        for r in self.values:
            acc = acc + r
        return acc


def differential_from_config(cfg: DiffConfig) -> RationalFunction:
    """``omega/dz`` as a rational function in ``z``."""
    if cfg.exact_form is not None:
        return cfg.exact_form
    sig = cfg.signature
    num = Polynomial.from_roots(zip(cfg.zeros, sig.zero_orders), lead=cfg.lam)
    den = Polynomial.from_roots(zip(cfg.poles, sig.pole_orders))
    # marked points are distinct, so numerator and denominator are coprime
    return RationalFunction(num, den, reduce=False)


def partial_fraction_form(cfg: DiffConfig) -> PartialFractionForm:
    return partial_fractions(differential_from_config(cfg), cfg.pole_factorization())


def residue_at_infinity(f: RationalFunction) -> Scalar:
    """Residue of ``f(z) dz`` at infinity, read off the Laurent tail at infinity."""
    d = f.denominator.degree
    if d < 1:
        return GaussianRational(0)
    _, r = divmod(f.numerator, f.denominator)
    return -r[d - 1] / f.denominator.leading


def residues(cfg: DiffConfig) -> ResidueVector:
    pf = partial_fraction_form(cfg)
    values = tuple(pf.pole_terms[y][0] for y in cfg.poles)
    return ResidueVector(values, residue_at_infinity(differential_from_config(cfg)))


def canonicalize(cfg: DiffConfig) -> DiffConfig:
    """Move ``x_0`` to 0 and ``y_0`` to 1 by the affine map ``z = a*z' + x_0``."""
    sig = cfg.signature
    if not sig.canonical_ok:
        raise NotCanonical(f"signature {sig.orders} admits no canonical normalization")
    x0 = cfg.zeros[0]
    a = cfg.poles[0] - x0
    weight = sum(sig.zero_orders) - sum(sig.pole_orders) + 1
    lam = cfg.lam * a ** weight if weight >= 0 else cfg.lam / a ** (-weight)
    zeros = [GaussianRational(0)] + [(x - x0) / a for x in cfg.zeros[1:]]
    poles = [GaussianRational(1)] + [(y - x0) / a for y in cfg.poles[1:]]
    return DiffConfig(sig, lam, zeros, poles, CANONICAL)
