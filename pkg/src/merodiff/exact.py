"""Exact and big-float scalar arithmetic, polynomials and rational functions.

Exact scalars are Gaussian rationals: pairs of :class:`fractions.Fraction`.
Anything that leaves ``Q(i)`` (square roots from pullbacks, exponentials)
falls back to :class:`~merodiff.numeric.BigComplex`.  Polynomials and
rational functions work over either kind and become floating as soon as one
coefficient is floating.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence, Union

from mpmath import MPContext

from .errors import BadFactorization, PoleEvaluation
from .numeric import DEFAULT_PREC, BigComplex, get_ctx, to_mpc


class GaussianRational:
    """An element ``re + i*im`` of ``Q(i)``, always in lowest terms."""

    __slots__ = ("re", "im")

    def __init__(self, re: Any = 0, im: Any = 0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def _of(x) -> GaussianRational | None:
        if type(x) is GaussianRational:
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        return None

    def __add__(self, other):
        o = GaussianRational._of(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational._of(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussianRational._of(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = GaussianRational._of(other)
        if o is None:
            return NotImplemented
        if not o.im:
            return GaussianRational(self.re * o.re, self.im * o.re)
        if not self.im:
            return GaussianRational(self.re * o.re, self.re * o.im)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational._of(other)
        if o is None:
            return NotImplemented
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero")
            return GaussianRational(self.re / o.re, self.im / o.re)
        n = o.re * o.re + o.im * o.im
        return GaussianRational((self.re * o.re + self.im * o.im) / n,
                                (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = GaussianRational._of(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return GaussianRational(1) / (self ** (-n))
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus, exactly."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return abs(complex(self))

    @property
    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        o = GaussianRational._of(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_mpc(self, ctx: MPContext):
        re = ctx.mpf(self.re.numerator) / self.re.denominator
        if not self.im:
            return ctx.mpc(re)
        return ctx.mpc(re, ctx.mpf(self.im.numerator) / self.im.denominator)

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*I"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*I"


Scalar = Union[GaussianRational, BigComplex]

I = GaussianRational(0, 1)


def exact(x: Any) -> GaussianRational:
    """Coerce an exact value (int, Fraction, "p/q" string, complex) to Q(i)."""
    if type(x) is GaussianRational:
        return x
    if isinstance(x, (int, Fraction, str)):
        return GaussianRational(Fraction(x))
    if isinstance(x, float):
        return GaussianRational(Fraction(x))
    if isinstance(x, complex):
        return GaussianRational(Fraction(x.real), Fraction(x.imag))
    raise TypeError(f"cannot represent {x!r} exactly")


def scalar(x: Any, prec: int = DEFAULT_PREC) -> Scalar:
    """Coerce ``x`` to a library scalar, keeping exact inputs exact."""
    if type(x) is GaussianRational or type(x) is BigComplex:
        return x
    if isinstance(x, (int, Fraction, str, float, complex)):
        return exact(x)
    return BigComplex(x, prec)


def is_exact(x: Any) -> bool:
    return type(x) is GaussianRational


def all_exact(xs: Iterable[Any]) -> bool:
    return all(type(x) is GaussianRational for x in xs)


def min_prec(xs: Iterable[Any], default: int = DEFAULT_PREC) -> int:
    precs = [x.prec for x in xs if type(x) is BigComplex]
    return min(precs) if precs else default


def approx_equal(a: Scalar, b: Scalar, rel: float | None = None) -> bool:
    """Equality for exact scalars; relative closeness when floats are involved."""
    if type(a) is GaussianRational and type(b) is GaussianRational:
        return a == b
    prec = min_prec((a, b))
    ctx = get_ctx(prec)
    tol = ctx.mpf(2) ** (-(prec - 24)) if rel is None else ctx.mpf(rel)
    da, db = to_mpc(a, ctx), to_mpc(b, ctx)
    return abs(da - db) <= tol * max(1, abs(da), abs(db))


class Polynomial:
    """Dense univariate polynomial, coefficients stored lowest degree first.

    The zero polynomial has no coefficients and degree ``ZERO_DEGREE``.
    """

    __slots__ = ("coeffs",)
    ZERO_DEGREE = -1

    def __init__(self, coeffs: Iterable[Any] = ()):
        cs = [scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Scalar, ...] = tuple(cs)

    @classmethod
    def _trusted(cls, cs: list) -> Polynomial:
        while cs and not cs[-1]:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def constant(cls, c: Any) -> Polynomial:
        return cls((c,))

    @classmethod
    def x(cls) -> Polynomial:
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[tuple[Any, int]], lead: Any = 1) -> Polynomial:
        """``lead * prod (z - r)**e`` over ``(r, e)`` pairs."""
        p = cls.constant(lead)
        for r, e in roots:
            lin = cls._trusted([-scalar(r), GaussianRational(1)])
            for _ in range(e):
                p = p * lin
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else GaussianRational(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_exact(self) -> bool:
        return all_exact(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else GaussianRational(0)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.constant(other)
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other)

    def __add__(self, other):
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for k, c in enumerate(b):
            cs[k] = cs[k] + c
        return Polynomial._trusted(cs)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._trusted([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            s = scalar(other)
            return Polynomial._trusted([c * s for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [GaussianRational(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Polynomial._trusted(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Polynomial.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.leading
        if len(rem) - 1 < db:
            return Polynomial(), Polynomial._trusted(rem)
        quot = [GaussianRational(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lead
            quot[k] = c
            if c:
                for j, bj in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * bj
            rem[k + db] = GaussianRational(0)
        return Polynomial._trusted(quot), Polynomial._trusted(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, z: Any) -> Scalar:
        z = scalar(z)
        acc = GaussianRational(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def eval_mpc(self, z, ctx: MPContext):
        """Horner evaluation on raw mpmath numbers (used in inner loops)."""
        acc = ctx.mpc(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c.to_mpc(ctx)
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial._trusted([c * k for k, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> Polynomial:
        """Antiderivative with zero constant term."""
        return Polynomial._trusted(
            [GaussianRational(0)] + [c / GaussianRational(k + 1) for k, c in enumerate(self.coeffs)])

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        return self * (GaussianRational(1) / self.leading)

    def taylor_shift(self, a: Any) -> Polynomial:
        """Coefficients of ``p(a + t)`` as a polynomial in ``t``."""
        a = scalar(a)
        c = list(self.coeffs)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] = c[j] + a * c[j + 1]
        return Polynomial._trusted(c)

    def compose(self, other: Polynomial) -> Polynomial:
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def map(self, fn) -> Polynomial:
        return Polynomial(fn(c) for c in self.coeffs)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over the exact field Q(i)."""
    if not (a.is_exact and b.is_exact):
        raise TypeError("gcd is only defined for exact polynomials")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def polys_close(a: Polynomial, b: Polynomial, prec: int | None = None) -> bool:
    if a.is_exact and b.is_exact:
        return a == b
    if prec is None:
        prec = min_prec(a.coeffs + b.coeffs)
    ctx = get_ctx(prec)
    scale = max([abs(c.to_mpc(ctx)) for c in a.coeffs + b.coeffs] + [ctx.mpf(1)])
    tol = scale * ctx.mpf(2) ** (-(prec - 24))
    n = max(len(a), len(b))
    return all(abs(a[k].to_mpc(ctx) - b[k].to_mpc(ctx)) <= tol for k in range(n))


class RationalFunction:
    """Quotient of polynomials with a monic denominator.

    Over Q(i) the pair is kept coprime, so equal functions have equal
    representations.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Any, denominator: Any = 1, reduce: bool = True):
        num = numerator if isinstance(numerator, Polynomial) else Polynomial.constant(numerator)
        den = denominator if isinstance(denominator, Polynomial) else Polynomial.constant(denominator)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Polynomial.constant(1)
        elif reduce and num.is_exact and den.is_exact and den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num // g
                den = den // g
        lead = den.leading
        if lead != 1:
            inv = GaussianRational(1) / lead
            num = num * inv
            den = den * inv
        self.numerator = num
        self.denominator = den

    @classmethod
    def polynomial(cls, p: Polynomial) -> RationalFunction:
        return cls(p, Polynomial.constant(1))

    @property
    def is_exact(self) -> bool:
        return self.numerator.is_exact and self.denominator.is_exact

    def __call__(self, z: Any) -> Scalar:
        return rf_eval(self, z)

    def _lift(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return RationalFunction(Polynomial.constant(other))

    def __add__(self, other):
        o = self._lift(other)
        if self.denominator == o.denominator:
            return RationalFunction(self.numerator + o.numerator, self.denominator)
        return RationalFunction(self.numerator * o.denominator + o.numerator * self.denominator,
                                self.denominator * o.denominator)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator, reduce=False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFunction(self.numerator * o.numerator, self.denominator * o.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.numerator.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.numerator * o.denominator, self.denominator * o.numerator)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        return (self.numerator * other.denominator) == (other.numerator * self.denominator)

    def isclose(self, other: RationalFunction) -> bool:
        return polys_close(self.numerator * other.denominator, other.numerator * self.denominator)

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __repr__(self):
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"

    def derivative(self) -> RationalFunction:
        n, d = self.numerator, self.denominator
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def compose(self, g: RationalFunction) -> RationalFunction:
        """``self(g(z))`` as a rational function of ``z``."""
        P, Q = g.numerator, g.denominator

        def homogenize(p: Polynomial, deg: int) -> Polynomial:
            acc = Polynomial()
            for k, c in enumerate(p.coeffs):
                acc = acc + (P ** k) * (Q ** (deg - k)) * c
            return acc

        dn, dd = self.numerator.degree, self.denominator.degree
        deg = max(dn, dd, 0)
        return RationalFunction(homogenize(self.numerator, deg), homogenize(self.denominator, deg))


def rf_eval(f: RationalFunction, z: Any) -> Scalar:
    """Evaluate ``f`` at ``z``; exact inputs give exact outputs."""
    z = scalar(z)
    d = f.denominator(z)
    if not d:
        raise PoleEvaluation(f"{z} is a root of the denominator")
    return f.numerator(z) / d


@dataclass(frozen=True)
class PartialFractionForm:
    """``Q(z) + sum_i sum_j a_ij / (z - y_i)**j``.

    ``pole_terms[y]`` lists ``a_1, ..., a_e`` for the pole at ``y``; the first
    entry is the residue there.
    """

    polynomial_part: Polynomial
    pole_terms: Mapping[Scalar, tuple[Scalar, ...]] = field(default_factory=dict)

    def residue(self, location: Any) -> Scalar:
        return self.pole_terms[scalar(location)][0]

    @property
    def residues(self) -> tuple[Scalar, ...]:
        return tuple(terms[0] for terms in self.pole_terms.values())


def _series_quotient(num: Polynomial, den: Polynomial, order: int) -> list[Scalar]:
    """First ``order`` Taylor coefficients of num/den at 0 (den(0) != 0)."""
    d0 = den[0]
    out: list[Scalar] = []
    for k in range(order):
        acc = num[k]
        for i in range(1, k + 1):
            di = den[i]
            if di:
                acc = acc - di * out[k - i]
        out.append(acc / d0)
    return out


def partial_fractions(f: RationalFunction,
                      poles: Sequence[tuple[Any, int]]) -> PartialFractionForm:
    """Decompose ``f`` over the given factorization of its denominator.

    ``poles`` lists ``(location, order)`` pairs whose product
    ``prod (z - y)**e`` must equal the (monic) denominator of ``f``.  Each
    coefficient is read off a Taylor expansion of ``(z - y)**e * f`` at ``y``,
    which is exact over exact inputs.
    """
    plist = [(scalar(y), int(e)) for y, e in poles]
    locs = [y for y, _ in plist]
    for a in range(len(locs)):
        if plist[a][1] < 1:
            raise BadFactorization(f"pole order must be positive, got {plist[a][1]}")
        for b in range(a):
            if approx_equal(locs[a], locs[b]):
                raise BadFactorization(f"repeated pole location {locs[a]}")
    if not polys_close(f.denominator, Polynomial.from_roots(plist)):
        raise BadFactorization("the supplied poles do not factor the denominator")

    quotient, _ = divmod(f.numerator, f.denominator)
    terms: dict[Scalar, tuple[Scalar, ...]] = {}
    for idx, (y, e) in enumerate(plist):
        rest = Polynomial.from_roots(p for k, p in enumerate(plist) if k != idx)
        coeffs = _series_quotient(f.numerator.taylor_shift(y), rest.taylor_shift(y), e)
        terms[y] = tuple(coeffs[e - j] for j in range(1, e + 1))
    return PartialFractionForm(quotient, terms)


def recompose(pf: PartialFractionForm) -> RationalFunction:
    """Collapse a partial-fraction form back into one rational function."""
    plist = [(y, len(a)) for y, a in pf.pole_terms.items()]
    den = Polynomial.from_roots(plist)
    num = pf.polynomial_part * den
    for idx, (y, a) in enumerate(pf.pole_terms.items()):
        e = len(a)
        others = Polynomial.from_roots(p for k, p in enumerate(plist) if k != idx)
        lin = Polynomial((-y, 1))
        for j, coeff in enumerate(a, start=1):
            if coeff:
                num = num + others * (lin ** (e - j)) * coeff
    return RationalFunction(num, den)
