"""Arbitrary-precision complex numbers.

mpmath keeps its working precision on a context object, and several of its
routines temporarily mutate that precision.  To keep results pure and
thread-safe, every precision gets its own :class:`mpmath.MPContext`, cached
per thread and never re-configured after creation.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Any

from mpmath import MPContext
from mpmath import libmp

DEFAULT_PREC = 256
MIN_PREC = 64

_local = threading.local()


def get_ctx(prec: int = DEFAULT_PREC) -> MPContext:
    """Return this thread's mpmath context running at ``prec`` bits."""
    cache = getattr(_local, "contexts", None)
    if cache is None:
        cache = _local.contexts = {}
    ctx = cache.get(prec)
    if ctx is None:
        ctx = MPContext()
        ctx.prec = prec
        cache[prec] = ctx
    return ctx


def to_mpc(x: Any, ctx: MPContext):
    """Convert an exact or floating scalar to an ``mpc`` of ``ctx``."""
    if isinstance(x, BigComplex):
        return ctx.mpc(x.value)
    if isinstance(x, Fraction):
        return ctx.mpc(ctx.mpf(x.numerator) / x.denominator)
    if isinstance(x, int):
        return ctx.mpc(x)
    conv = getattr(x, "to_mpc", None)
    if conv is not None:
        return conv(ctx)
    return ctx.mpc(x)


class BigComplex:
    """A complex number carrying its own binary precision.

    Arithmetic between two values runs at the smaller of the two precisions;
    exact operands (ints, Fractions, Gaussian rationals) adopt the precision
    of the floating operand.
    """

    __slots__ = ("value", "prec")

    def __init__(self, value: Any = 0, prec: int = DEFAULT_PREC):
        if prec < MIN_PREC:
            raise ValueError(f"precision must be at least {MIN_PREC} bits, got {prec}")
        self.prec = prec
        self.value = to_mpc(value, get_ctx(prec))

    @classmethod
    def _raw(cls, value, prec: int) -> BigComplex:
        obj = object.__new__(cls)
        obj.value = value
        obj.prec = prec
        return obj

    @property
    def ctx(self) -> MPContext:
        return get_ctx(self.prec)

    @property
    def real(self):
        return self.value.real

    @property
    def imag(self):
        return self.value.imag

    def _coerce(self, other):
        if isinstance(other, BigComplex):
            prec = min(self.prec, other.prec)
            ctx = get_ctx(prec)
            if prec == self.prec and prec == other.prec:
                return ctx, self.value, other.value
            return ctx, ctx.mpc(self.value), ctx.mpc(other.value)
        try:
            ctx = get_ctx(self.prec)
            return ctx, self.value, to_mpc(other, ctx)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ctx, a, b = c
        return BigComplex._raw(a + b, ctx.prec)

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ctx, a, b = c
        return BigComplex._raw(a - b, ctx.prec)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ctx, a, b = c
        return BigComplex._raw(b - a, ctx.prec)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ctx, a, b = c
        return BigComplex._raw(a * b, ctx.prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ctx, a, b = c
        return BigComplex._raw(a / b, ctx.prec)

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ctx, a, b = c
        return BigComplex._raw(b / a, ctx.prec)

    def __neg__(self):
        return BigComplex._raw(-self.value, self.prec)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return BigComplex._raw(self.value**n, self.prec)

    def __abs__(self):
        return abs(self.value)

    def conjugate(self) -> BigComplex:
        return BigComplex._raw(self.ctx.conj(self.value), self.prec)

    def __eq__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        _, a, b = c
        return a == b

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __complex__(self):
        return complex(self.value)

    def __repr__(self):
        return f"BigComplex({self.ctx.nstr(self.value, 20)}, prec={self.prec})"

    def to_mpc(self, ctx: MPContext):
        return ctx.mpc(self.value)

    def with_prec(self, prec: int) -> BigComplex:
        return BigComplex(self.value, prec)

    def decimal_parts(self) -> tuple[str, str]:
        """Deterministic decimal strings for the real and imaginary parts."""
        dps = libmp.prec_to_dps(self.prec)
        ctx = self.ctx
        return (ctx.nstr(self.value.real, dps, min_fixed=-5, max_fixed=20),
                ctx.nstr(self.value.imag, dps, min_fixed=-5, max_fixed=20))
