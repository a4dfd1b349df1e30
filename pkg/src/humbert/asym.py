"""Transformation series and large-parameter expansions of pFq.

Fields' rearrangement

    2F2[a, b; c, d; z] = sum_k (a)_k (d-b)_k / ((c)_k (d)_k) (-z)^k/k! 1F1[a+k; c+k; z]

(and Luke's generalisation to ``p+1Fq+1``) is exact.  Shifting ``b, d`` by
a large parameter moves it into the ``(d)_k`` denominators only, so
truncating after ``N`` terms leaves a remainder of relative size
``parameter**-N``.  Each ``asym_*`` routine below returns such a truncated
sum as an :class:`ExpansionResult`; :func:`shifted_shape` gives the
parameters of the function it approximates, for comparison against a
direct-series oracle.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import (
    ConstraintViolation,
    DenominatorPole,
    DomainViolation,
    GammaPole,
    IntegerDegeneracy,
    SectorViolation,
    ShapeViolation,
)
from .hyp import (
    DEFAULT_CONTROL,
    EvalResult,
    HypParams,
    Method,
    OuterSum,
    SeriesControl,
    check_terms,
    f11,
    f21,
    is_pole,
    pfq_series,
)
from .scaled import (
    NEAR_INTEGER_WARN,
    ZERO,
    LogScaled,
    gamma_ratio,
    integer_distance,
    is_integer,
    is_nonpositive_integer,
    ls_sum,
    pochhammer,
)

DEFAULT_DELTA = 0.1


class Variant(str, enum.Enum):
    LARGE_LAMBDA = "large_lambda"
    MINUS_N = "minus_n"
    PFQ_ALL_DOWN = "pfq_all_down"
    PFP_ONE_DOWN = "pfp_one_down"
    F22_A_DOWN = "f22_a_down"
    F22_BOTH_DOWN = "f22_both_down"
    LARGE_Z_LEADING = "large_z_leading"

    def __str__(self) -> str:
        return self.value


_INTEGER_PARAMETER = {
    Variant.MINUS_N,
    Variant.PFQ_ALL_DOWN,
    Variant.PFP_ONE_DOWN,
    Variant.F22_A_DOWN,
    Variant.F22_BOTH_DOWN,
}


@dataclass(frozen=True)
class ExpansionRequest:
    variant: Variant
    N: int
    parameter: complex

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if int(self.N) != self.N or self.N < 1:
            raise ConstraintViolation(f"truncation order must be a positive integer, got {self.N}")
        if self.variant in _INTEGER_PARAMETER:
            n = self.parameter
            if isinstance(n, bool) or int(n) != n or n < 1:
                raise ConstraintViolation(f"n must be a positive integer, got {n!r}")


@dataclass(frozen=True)
class ExpansionResult:
    value: LogScaled
    truncation_order: int
    first_omitted_term: float
    exact: bool = False
    near_degenerate: bool = False

    def to_complex(self) -> complex:
        return self.value.to_complex()


# --- helpers ---------------------------------------------------------------


def _near_integer(*values) -> bool:
    """Inputs that pass the integrality test but only barely."""
    return any(0 < integer_distance(v) <= NEAR_INTEGER_WARN for v in values)


def _forbid_integer(**values):
    for name, v in values.items():
        if is_integer(v):
            raise IntegerDegeneracy(f"{name}={complex(v)} must not be an integer")


def _forbid_pole(**values):
    for name, v in values.items():
        if is_nonpositive_integer(v):
            raise DenominatorPole(f"{name}={complex(v)} must not be a nonpositive integer")


def _termination_order(d_minus_b) -> int | None:
    """Number of nonzero ``(d-b)_k`` when ``d - b`` is a nonpositive integer."""
    v = complex(d_minus_b)
    if is_nonpositive_integer(v):
        return 1 - round(v.real)
    return None


def _coef(k, num, den, z) -> complex:
    out = complex(z) ** k / math.factorial(k)
    for v in num:
        out *= pochhammer(complex(v), k)
    for v in den:
        out /= pochhammer(complex(v), k)
    return out


def _truncate(term, N, stop=None, near=False) -> ExpansionResult:
    """Sum ``term(0..N-1)``; ``stop`` is the index from which all terms vanish."""
    value = ls_sum(term(k) for k in range(N))
    exact = stop is not None and N >= stop
    omitted = 0.0 if exact else abs(term(N).to_complex())
    return ExpansionResult(value, N, omitted, exact, near)


def _fields_term(a, c, d_minus_b, den, z, k, inner_arg=None, inner_a=None, inner_c=None):
    coef = _coef(k, [a, d_minus_b], [c, den], -complex(z))
    if coef == 0:
        return ZERO
    ia = a + k if inner_a is None else inner_a
    ic = c + k if inner_c is None else inner_c(k)
    inner = f11(ia, ic, z if inner_arg is None else inner_arg)
    return LogScaled.from_value(coef) * inner.value


# --- exact transformation series -------------------------------------------


def f22_fields_series(a, b, c, d, z, ctrl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """``2F2[a, b; c, d; z]`` as a series of ``1F1[a+k; c+k; z]`` values."""
    _forbid_pole(c=c, d=d)
    return pfp_luke_series([a], [c], b, d, z, ctrl, _method=Method.FIELDS)


def _inner_pfq(num, den, z, ctrl) -> EvalResult:
    if len(num) == 1 and not den:
        # 1F0[a;;z] = (1 - z)^-a
        return EvalResult(LogScaled.from_log(-num[0] * cmath.log(1 - z)), 0.0, 1, Method.DIRECT_SERIES)
    if len(num) == 1 and len(den) == 1:
        return f11(num[0], den[0], z, ctrl)
    if len(num) == 2 and len(den) == 1:
        return f21(num[0], num[1], den[0], z, ctrl)
    return pfq_series(HypParams(num, den), z, ctrl)


def pfp_luke_series(num, den, b, d, z, ctrl: SeriesControl = DEFAULT_CONTROL,
                    _method=Method.LUKE) -> EvalResult:
    """``p+1Fq+1[num, b; den, d; z]`` rebuilt from shifted ``pFq`` values."""
    num = [complex(v) for v in num]
    den = [complex(v) for v in den]
    b, d, z = complex(b), complex(d), complex(z)
    p, q = len(num), len(den)
    if p > q + 1:
        raise ShapeViolation(f"needs p <= q + 1, got p={p}, q={q}")
    if p == q + 1 and z.real >= 0.5:
        raise DomainViolation(f"p = q + 1 needs Re z < 1/2, got {z.real:g}")
    _forbid_pole(d=d, **{f"c{j + 1}": v for j, v in enumerate(den)})
    acc = OuterSum(ctrl)
    coef = LogScaled.from_value(1)
    k = 0
    while True:
        check_terms(ctrl, k, "transformation series")
        if k:
            r = -z * (d - b + k - 1) / ((d + k - 1) * k)
            for v in num:
                r *= v + k - 1
            for v in den:
                r /= v + k - 1
            coef = coef * r if r != 0 else ZERO
        if coef.is_zero:
            term, rel = ZERO, 0.0
        else:
            inner = _inner_pfq([v + k for v in num], [v + k for v in den], z, ctrl)
            term, rel = coef * inner.value, inner.rel_err
        if acc.add(term, rel):
            return acc.result(_method)
        k += 1


# --- large-parameter expansions --------------------------------------------


def asym_f22_large_lambda(a, b, c, d, z, lam, N: int, delta: float = DEFAULT_DELTA) -> ExpansionResult:
    """``2F2[a, b+lam; c, d+lam; z]`` for large ``|lam|`` in a sector."""
    lam = complex(lam)
    ExpansionRequest(Variant.LARGE_LAMBDA, N, lam)
    _forbid_pole(c=c, **{"lambda+d": lam + d})
    if abs(cmath.phase(lam + d)) > math.pi - delta:
        raise SectorViolation(f"|arg(lambda+d)| must be <= pi - {delta:g}")
    a, c = complex(a), complex(c)
    return _truncate(lambda k: _fields_term(a, c, d - b, d + lam, z, k), N,
                     _termination_order(d - b), _near_integer(c))


def asym_f22_minus_n(a, b, c, d, z, n: int, N: int) -> ExpansionResult:
    """``2F2[a, b-n; c, d-n; z]`` for large integer ``n``.

    When ``b - d`` is a positive integer the series terminates and
    ``N = b - d + 1`` terms are exact.
    """
    ExpansionRequest(Variant.MINUS_N, N, n)
    _forbid_pole(c=c)
    _forbid_integer(d=d)
    a, c = complex(a), complex(c)
    return _truncate(lambda k: _fields_term(a, c, d - b, d - n, z, k), N,
                     _termination_order(d - b), _near_integer(c, d, b - d))


def asym_pfq_all_down(num_shift, den_shift, num_fix, den_fix, z, n: int, N: int) -> ExpansionResult:
    """``p+rFq+s`` with every ``num_shift``/``den_shift`` entry lowered by ``n``."""
    ExpansionRequest(Variant.PFQ_ALL_DOWN, N, n)
    p, q, r, s = len(num_shift), len(den_shift), len(num_fix), len(den_fix)
    if q < p + 1 or s < r - 1:
        raise ShapeViolation(f"needs q >= p+1 and s >= r-1, got p={p}, q={q}, r={r}, s={s}")
    _forbid_integer(**{f"c{j + 1}": v for j, v in enumerate(den_shift)})
    _forbid_pole(**{f"d{j + 1}": v for j, v in enumerate(den_fix)})
    num = [complex(v) - n for v in num_shift] + [complex(v) for v in num_fix]
    den = [complex(v) - n for v in den_shift] + [complex(v) for v in den_fix]
    stop = None
    for v in num:
        if is_nonpositive_integer(v):
            stop = min(stop or math.inf, 1 - round(v.real))

    def term(k):
        return LogScaled.from_value(_coef(k, num, den, z))

    return _truncate(term, N, stop, _near_integer(*den_shift))


def asym_pfp_one_down(num, den, b, d, z, n: int, N: int) -> ExpansionResult:
    """``p+1Fp+1[num, b-n; den, d-n; z]`` as shifted ``pFp`` values."""
    ExpansionRequest(Variant.PFP_ONE_DOWN, N, n)
    num = [complex(v) for v in num]
    den = [complex(v) for v in den]
    if len(num) != len(den):
        raise ShapeViolation(f"needs equal numerator and denominator counts, got {len(num)}, {len(den)}")
    _forbid_pole(**{f"c{j + 1}": v for j, v in enumerate(den)})
    _forbid_integer(b=b, d=d)
    b, d, z = complex(b), complex(d), complex(z)

    def term(k):
        coef = _coef(k, num + [d - b], den + [d - n], -z)
        if coef == 0:
            return ZERO
        inner = _inner_pfq([v + k for v in num], [v + k for v in den], z, DEFAULT_CONTROL)
        return LogScaled.from_value(coef) * inner.value

    return _truncate(term, N, _termination_order(d - b), _near_integer(b, d, *den))


def asym_f22_a_down(a, b, c, d, z, n: int, N: int) -> ExpansionResult:
    """``2F2[a-n, b; c-n, d-n; z]``: the plain truncated power series."""
    ExpansionRequest(Variant.F22_A_DOWN, N, n)
    _forbid_integer(c=c, d=d)
    return asym_pfq_all_down([a], [c, d], [b], [], z, n, N)


def asym_f22_both_down(a, b, c, d, z, n: int, N: int) -> ExpansionResult:
    """``2F2[a-n, b-n; c-n, d-n; z]`` through Kummer-transformed ``1F1`` values.

    The inner functions are ``1F1[c-a; c-n+k; -z]`` and the whole sum
    carries a factor ``e**z``.
    """
    ExpansionRequest(Variant.F22_BOTH_DOWN, N, n)
    _forbid_integer(a=a, b=b, c=c, d=d)
    a, b, c, d, z = (complex(v) for v in (a, b, c, d, z))
    ez = LogScaled.from_log(z)

    def term(k):
        t = _fields_term(a - n, c - n, d - b, d - n, z, k, inner_arg=-z,
                         inner_a=c - a, inner_c=lambda k: c - n + k)
        return ez * t

    return _truncate(term, N, _termination_order(d - b), _near_integer(a, b, c, d))


def asym_f22_large_z(a, b, c, d, nu: int, z) -> LogScaled:
    """Leading behaviour of ``2F2[a, b+nu; c, d+nu; z]`` as ``z -> inf``, ``|arg z| < pi/2``."""
    z = complex(z)
    if z == 0 or abs(cmath.phase(z)) >= math.pi / 2:
        raise SectorViolation("needs |arg z| < pi/2")
    for name, v in (("a", a), ("b+nu", complex(b) + nu)):
        if is_pole(v):
            raise GammaPole(f"{name}={complex(v)} makes the leading coefficient vanish")
    _forbid_pole(c=c)
    pre = gamma_ratio([c, complex(d) + nu], [a, complex(b) + nu])
    power = complex(a) + b - c - d
    return pre * LogScaled.from_log(power * cmath.log(z) + z)


# --- uniform access for sweeps ---------------------------------------------

# expected log-log slope of error against scale, per unit of N
def expected_slope(variant: Variant, params: dict, N: int) -> float:
    variant = Variant(variant)
    if variant is Variant.PFQ_ALL_DOWN:
        return float((len(params["num_shift"]) - len(params["den_shift"])) * N)
    if variant is Variant.LARGE_Z_LEADING:
        return -1.0
    return float(-N)


def expand(variant, params: dict, scale, N: int):
    """Evaluate ``variant`` at ``scale`` (``lam``, ``n`` or ``z``).

    Returns an :class:`ExpansionResult`; the large-``z`` variant has no
    truncation order and is wrapped with ``N`` ignored.
    """
    variant = Variant(variant)
    P = params
    if variant is Variant.LARGE_LAMBDA:
        return asym_f22_large_lambda(P["a"], P["b"], P["c"], P["d"], P["z"], scale, N,
                                     P.get("delta", DEFAULT_DELTA))
    if variant is Variant.MINUS_N:
        return asym_f22_minus_n(P["a"], P["b"], P["c"], P["d"], P["z"], int(scale), N)
    if variant is Variant.PFQ_ALL_DOWN:
        return asym_pfq_all_down(P["num_shift"], P["den_shift"], P.get("num_fix", []),
                                 P.get("den_fix", []), P["z"], int(scale), N)
    if variant is Variant.PFP_ONE_DOWN:
        return asym_pfp_one_down(P["num"], P["den"], P["b"], P["d"], P["z"], int(scale), N)
    if variant is Variant.F22_A_DOWN:
        return asym_f22_a_down(P["a"], P["b"], P["c"], P["d"], P["z"], int(scale), N)
    if variant is Variant.F22_BOTH_DOWN:
        return asym_f22_both_down(P["a"], P["b"], P["c"], P["d"], P["z"], int(scale), N)
    value = asym_f22_large_z(P["a"], P["b"], P["c"], P["d"], P.get("nu", 0), scale)
    return ExpansionResult(value, 1, math.nan)


def shifted_shape(variant, params: dict, scale):
    """``(numerator, denominator, z)`` of the function a variant approximates."""
    variant = Variant(variant)
    P = params
    if variant is Variant.LARGE_LAMBDA:
        return [P["a"], P["b"] + scale], [P["c"], P["d"] + scale], P["z"]
    if variant is Variant.MINUS_N:
        return [P["a"], P["b"] - scale], [P["c"], P["d"] - scale], P["z"]
    if variant is Variant.PFQ_ALL_DOWN:
        num = [v - scale for v in P["num_shift"]] + list(P.get("num_fix", []))
        den = [v - scale for v in P["den_shift"]] + list(P.get("den_fix", []))
        return num, den, P["z"]
    if variant is Variant.PFP_ONE_DOWN:
        return list(P["num"]) + [P["b"] - scale], list(P["den"]) + [P["d"] - scale], P["z"]
    if variant is Variant.F22_A_DOWN:
        return [P["a"] - scale, P["b"]], [P["c"] - scale, P["d"] - scale], P["z"]
    if variant is Variant.F22_BOTH_DOWN:
        return [P["a"] - scale, P["b"] - scale], [P["c"] - scale, P["d"] - scale], P["z"]
    nu = P.get("nu", 0)
    return [P["a"], P["b"] + nu], [P["c"], P["d"] + nu], scale


__all__ = [
    "DEFAULT_DELTA",
    "Variant",
    "ExpansionRequest",
    "ExpansionResult",
    "f22_fields_series",
    "pfp_luke_series",
    "asym_f22_large_lambda",
    "asym_f22_minus_n",
    "asym_pfq_all_down",
    "asym_pfp_one_down",
    "asym_f22_a_down",
    "asym_f22_both_down",
    "asym_f22_large_z",
    "expected_slope",
    "expand",
    "shifted_shape",
]
