"""Log-scaled complex numbers and gamma-family primitives.

A :class:`LogScaled` holds ``mantissa * exp(exponent)`` with a real
exponent, which keeps quantities such as ``exp(3001)`` inside ordinary
floating point.  All logarithms and powers use the principal branch,
``arg`` in ``(-pi, pi]``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number

import numpy as np
from scipy import special

from .errors import DenominatorPole, GammaPole

__all__ = [
    "LogScaled",
    "PochhammerQuery",
    "ls_normalize",
    "ls_mul",
    "ls_add",
    "ls_pow_real",
    "ls_sum",
    "log_gamma",
    "gamma_ratio",
    "pochhammer",
    "pochhammer_ratio",
    "integer_distance",
    "is_integer",
    "is_nonpositive_integer",
]

# pochhammer_ratio switches from the direct product to log-gamma differences
POCHHAMMER_CROSSOVER = 32

# distance-to-integer threshold for inputs that are not small rationals
INTEGER_TOL = 1e-9
NEAR_INTEGER_WARN = 1e-6


@dataclass(frozen=True)
class LogScaled:
    """Complex value ``mantissa * e**exponent``.

    The constructor stores its arguments verbatim; every arithmetic
    operation returns a normalized instance (``1 <= |mantissa| < e`` or
    the canonical zero ``(0, 0)``).
    """

    mantissa: complex = 0j
    exponent: float = 0.0

    @classmethod
    def from_value(cls, value: Number) -> LogScaled:
        return ls_normalize(cls(complex(value), 0.0))

    @classmethod
    def from_log(cls, logvalue: complex) -> LogScaled:
        """Build from a (complex) natural logarithm of the value."""
        logvalue = complex(logvalue)
        if math.isinf(logvalue.real) and logvalue.real < 0:
            return ZERO
        if not (math.isfinite(logvalue.real) and math.isfinite(logvalue.imag)):
            raise OverflowError(f"non-finite logarithm {logvalue!r}")
        k = math.floor(logvalue.real)
        frac = logvalue.real - k
        m = cmath.exp(complex(frac, logvalue.imag))
        return ls_normalize(cls(m, float(k)))

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0

    @property
    def log_abs(self) -> float:
        """``log|value|``; ``-inf`` for zero."""
        if self.mantissa == 0:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.exponent

    def log(self) -> complex:
        """Principal logarithm of the represented value."""
        if self.mantissa == 0:
            return complex(-math.inf, 0.0)
        return cmath.log(self.mantissa) + self.exponent

    def to_complex(self) -> complex:
        """Ordinary complex value; components overflow to ``inf`` when too large."""
        if self.mantissa == 0:
            return 0j
        if abs(self.exponent) < 700.0:
            return self.mantissa * math.exp(self.exponent)
        if self.exponent > 711.0:
            inf = math.inf
            re = math.copysign(inf, self.mantissa.real) if self.mantissa.real else 0.0
            im = math.copysign(inf, self.mantissa.imag) if self.mantissa.imag else 0.0
            return complex(re, im)
        # two half-steps keep the exp from overflowing (or flushing) before the product does
        half = math.exp(self.exponent / 2) if self.exponent > -1500 else 0.0
        re = self.mantissa.real * half * half if self.mantissa.real else 0.0
        im = self.mantissa.imag * half * half if self.mantissa.imag else 0.0
        return complex(re, im)

    def __complex__(self) -> complex:
        return self.to_complex()

    def __float__(self) -> float:
        return self.to_complex().real

    def __mul__(self, other):
        return ls_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.mantissa == 0:
            raise ZeroDivisionError("division by a zero LogScaled")
        return ls_normalize(LogScaled(self.mantissa / other.mantissa, self.exponent - other.exponent))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __add__(self, other):
        return ls_add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return LogScaled(-self.mantissa, self.exponent)

    def __sub__(self, other):
        return ls_add(self, -_coerce(other))

    def __rsub__(self, other):
        return ls_add(_coerce(other), -self)

    def __pow__(self, p):
        return ls_pow_real(self, p)

    def conjugate(self) -> LogScaled:
        return LogScaled(self.mantissa.conjugate(), self.exponent)

    def ratio(self, other: LogScaled) -> complex:
        """``self / other`` as an ordinary complex number, formed in log space."""
        if other.mantissa == 0:
            raise ZeroDivisionError("ratio against a zero LogScaled")
        if self.mantissa == 0:
            return 0j
        return (self.mantissa / other.mantissa) * math.exp(self.exponent - other.exponent)

    def __repr__(self) -> str:
        return f"LogScaled({self.mantissa!r}, {self.exponent!r})"


ZERO = LogScaled(0j, 0.0)
ONE = LogScaled(1 + 0j, 0.0)


def _coerce(value) -> LogScaled:
    if isinstance(value, LogScaled):
        return value
    return LogScaled.from_value(value)


def ls_normalize(v: LogScaled) -> LogScaled:
    m = complex(v.mantissa)
    if m == 0:
        return ZERO
    r = abs(m)
    if not math.isfinite(r):
        raise OverflowError(f"non-finite mantissa {m!r}")
    k = math.floor(math.log(r))
    if k:
        if abs(k) < 700:
            m = m / math.exp(k)
        else:
            half = math.exp(-k / 2)
            m = m * half * half
    # guard the floor against rounding at the interval ends
    r = abs(m)
    if r >= math.e:
        m /= math.e
        k += 1
    elif r < 1.0:
        m *= math.e
        k -= 1
    return LogScaled(m, float(v.exponent) + k)


def ls_mul(u: LogScaled, v: LogScaled) -> LogScaled:
    if u.mantissa == 0 or v.mantissa == 0:
        return ZERO
    return ls_normalize(LogScaled(u.mantissa * v.mantissa, u.exponent + v.exponent))


def ls_add(u: LogScaled, v: LogScaled) -> LogScaled:
    if u.mantissa == 0:
        return ls_normalize(v)
    if v.mantissa == 0:
        return ls_normalize(u)
    top = max(u.exponent, v.exponent)
    m = u.mantissa * _exp_or_zero(u.exponent - top) + v.mantissa * _exp_or_zero(v.exponent - top)
    if m == 0:
        return ZERO
    return ls_normalize(LogScaled(m, top))


def ls_pow_real(u: LogScaled, p) -> LogScaled:
    """Principal power ``u**p``; ``p`` may be real or complex."""
    if u.mantissa == 0:
        if complex(p).real > 0:
            return ZERO
        raise ZeroDivisionError("zero raised to a non-positive power")
    return LogScaled.from_log(u.log() * p)


def ls_sum(values) -> LogScaled:
    """Sum an iterable of LogScaled values against a common exponent."""
    values = [v for v in values if v.mantissa != 0]
    if not values:
        return ZERO
    top = max(v.exponent for v in values)
    m = sum(v.mantissa * _exp_or_zero(v.exponent - top) for v in values)
    if m == 0:
        return ZERO
    return ls_normalize(LogScaled(complex(m), top))


def _exp_or_zero(x: float) -> float:
    return 0.0 if x < -745.0 else math.exp(x)


# --- integrality -----------------------------------------------------------


def integer_distance(z) -> float:
    """Distance from ``z`` to the nearest integer (``0.0`` for exact integers).

    Values that are exactly small rationals are decided exactly; anything
    else is measured in floating point.
    """
    z = complex(z)
    if z.imag != 0:
        return math.hypot(z.imag, z.real - round(z.real))
    x = z.real
    if not math.isfinite(x):
        return math.inf
    frac = Fraction(x).limit_denominator(1000)
    if float(frac) == x:
        return 0.0 if frac.denominator == 1 else abs(x - round(x))
    return abs(x - round(x))


def is_integer(z, tol: float = INTEGER_TOL) -> bool:
    return integer_distance(z) <= tol


def is_nonpositive_integer(z, tol: float = INTEGER_TOL) -> bool:
    z = complex(z)
    return is_integer(z, tol) and round(z.real) <= 0


# --- gamma family ----------------------------------------------------------


def log_gamma(z) -> complex:
    """Principal-branch ``log Gamma(z)``, continuous off the negative real axis."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise GammaPole(f"Gamma has a pole at {z.real:g}")
    return complex(special.loggamma(z))


def gamma_ratio(numer, denom) -> LogScaled:
    """``prod Gamma(numer) / prod Gamma(denom)`` in log-scaled form.

    A pole in the denominator makes the ratio zero; a pole in the
    numerator raises :class:`GammaPole`.
    """
    total = 0j
    for z in numer:
        total += log_gamma(z)
    for z in denom:
        try:
            total -= log_gamma(z)
        except GammaPole:
            return ZERO
    return LogScaled.from_log(total)


def pochhammer(a, n: int):
    """Rising factorial ``(a)_n``; exact for integer ``a``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1
    for k in range(n):
        out *= a + k
    return out


@dataclass(frozen=True)
class PochhammerQuery:
    a: complex
    b: complex
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")


def pochhammer_ratio(q: PochhammerQuery) -> LogScaled:
    """``(a)_n / (b)_n`` without overflow, even for ``n`` in the millions."""
    a, b, n = complex(q.a), complex(q.b), q.n
    if _exact_nonpositive_int(b) or is_nonpositive_integer(b):
        raise DenominatorPole(f"(b)_n with b={b} has a zero factor")
    if n == 0 or a == b:
        return ONE
    if n <= POCHHAMMER_CROSSOVER:
        ratio = 1 + 0j
        for k in range(n):
            ratio *= (a + k) / (b + k)
        return LogScaled.from_value(ratio)
    if _exact_nonpositive_int(a):
        if n > -a.real:
            return ZERO
        k = np.arange(n)
        logs = np.log((a + k).astype(complex)) - np.log((b + k).astype(complex))
        return LogScaled.from_log(complex(np.sum(logs)))
    if n > 8 * max(abs(a), abs(b), 4.0):
        shifted = _log_gamma_shift_difference(n, a, b)
    else:
        shifted = log_gamma(a + n) - log_gamma(b + n)
    return LogScaled.from_log(shifted - log_gamma(a) + log_gamma(b))


# B_2k / (2k (2k-1)) for the Stirling series of log Gamma
_STIRLING = (1 / 12, -1 / 360, 1 / 1260, -1 / 1680, 1 / 1188, -691 / 360360, 1 / 156, -3617 / 122400)


def _log1p_complex(u: complex) -> complex:
    """``log(1 + u)`` accurate for small complex ``u``."""
    re = 0.5 * math.log1p(2 * u.real + u.real * u.real + u.imag * u.imag)
    return complex(re, math.atan2(u.imag, 1 + u.real))


def _log_gamma_shift_difference(n: int, a: complex, b: complex) -> complex:
    """``log Gamma(n+a) - log Gamma(n+b)`` for ``n`` large against ``|a|, |b|``.

    Subtracting two log-gamma values of size ``n log n`` loses about
    ``n log n`` ulps; expanding both Stirling series around ``n`` first
    leaves only terms of order one.
    """
    out = (a - b) * math.log(n) - (a - b)
    out += (n + a - 0.5) * _log1p_complex(a / n) - (n + b - 0.5) * _log1p_complex(b / n)
    for w, sign in ((n + a, 1), (n + b, -1)):
        inv = 1 / w
        inv2 = inv * inv
        acc = 0j
        for coef in reversed(_STIRLING):
            acc = acc * inv2 + coef
        out += sign * acc * inv
    return out


def _exact_nonpositive_int(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)
