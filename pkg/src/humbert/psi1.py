"""Humbert's confluent function Psi1 of two variables.

    Psi1[a, b; c, c'; x, y] = sum_{m,n} (a)_{m+n} (b)_m / ((c)_m (c')_n) x^m/m! y^n/n!

Several independent evaluators are provided, each valid on its own part
of the cut plane ``x not in [1, inf)``:

* ``psi1_double_series``  -- the defining double sum, ``|x| < 1``
* ``psi1_single_series``  -- sum over ``n`` of 2F1 values, whole cut plane
* ``psi1_kummer``         -- the ``x -> x/(x-1)`` transformation around any of these
* ``psi1_integral``       -- Euler-type integral, ``Re c > Re b > 0``
* ``psi1_near_unit``      -- two 2F2-weighted series in ``1 - x``, ``|x-1| < 1``
* ``psi1_large_x``        -- two 2F2-weighted series in ``1/(1 - x)``, ``|x-1| > 1``

``psi1_leading_asym`` gives the leading behaviour for ``x -> infinity``,
``y -> +infinity`` with ``|y/(1-x)|`` held between fixed bounds.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BranchCut,
    ConstraintViolation,
    DegenerateCase,
    DenominatorPole,
    HypergeometricError,
    NoApplicableMethod,
    NoConvergence,
    OutsideDomain,
)
from .hyp import (
    DEFAULT_CONTROL,
    EPS,
    EvalResult,
    HypParams,
    Method,
    OuterSum,
    SeriesControl,
    check_terms,
    compose,
    f11,
    f21,
    is_pole,
    pfq_series,
    rescale_error,
)
from .quadrature import tanh_sinh_integrate
from .scaled import ONE, ZERO, LogScaled, gamma_ratio, is_integer


@dataclass(frozen=True)
class Psi1Params:
    a: complex
    b: complex
    c: complex
    c_prime: complex
    kummer_ok: bool = field(init=False, repr=False)
    large_x_ok: bool = field(init=False, repr=False)
    near_unit_ok: bool = field(init=False, repr=False)
    integral_ok: bool = field(init=False, repr=False)
    asym_ok: bool = field(init=False, repr=False)

    def __post_init__(self):
        for name in ("a", "b", "c", "c_prime"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if is_pole(self.c) or is_pole(self.c_prime):
            raise DenominatorPole("c and c' must not be nonpositive integers")
        a, b, c = self.a, self.b, self.c
        large_x = not is_integer(a - b) and not is_integer(a - c)
        object.__setattr__(self, "kummer_ok", True)
        object.__setattr__(self, "large_x_ok", large_x)
        object.__setattr__(self, "near_unit_ok", not is_integer(a + b - c))
        object.__setattr__(self, "integral_ok", c.real > b.real > 0)
        object.__setattr__(self, "asym_ok", large_x and (c - b).real > 0)

    def kummer_image(self) -> Psi1Params:
        return Psi1Params(self.a, self.c - self.b, self.c, self.c_prime)


@dataclass(frozen=True)
class Psi1Point:
    x: complex
    y: complex

    def __post_init__(self):
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", complex(self.y))
        if self.x.imag == 0 and self.x.real >= 1:
            raise BranchCut(f"x={self.x.real:g} is on the cut [1, inf)")

    @property
    def one_minus_x(self) -> complex:
        return 1 - self.x

    def kummer_image(self) -> Psi1Point:
        return Psi1Point(self.x / (self.x - 1), self.y / (1 - self.x))


@dataclass(frozen=True)
class AsymRegime:
    """Ray along which ``|y / (1 - x)|`` stays equal to ``gamma``."""

    gamma: float
    gamma_bounds: tuple[float, float] = (0.0, math.inf)

    def __post_init__(self):
        lo, hi = self.gamma_bounds
        if not 0 < self.gamma:
            raise ValueError("gamma must be positive")
        if not lo <= self.gamma <= hi:
            raise ValueError(f"gamma={self.gamma} outside bounds {self.gamma_bounds}")

    @classmethod
    def of(cls, pt: Psi1Point, bounds=(0.0, math.inf)) -> AsymRegime:
        return cls(abs(pt.y / pt.one_minus_x), bounds)

    def point(self, x) -> Psi1Point:
        """Point on the ray with real positive ``y = gamma |1 - x|``."""
        x = complex(x)
        return Psi1Point(x, self.gamma * abs(1 - x))


@dataclass(frozen=True)
class DispatchConfig:
    double_series_radius: float = 0.75
    near_unit_radius: float = 0.75
    large_x_radius: float = 1.5
    large_x_max_abs_y: float = 10.0


def _clog(z: complex) -> complex:
    return complex(-math.inf, 0.0) if z == 0 else cmath.log(z)


# --- evaluators ----------------------------------------------------------------


def psi1_double_series(p: Psi1Params, pt: Psi1Point, ctrl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """Defining double series, summed along anti-diagonals ``m + n = s``.

    On a diagonal ``(a)_{m+n}`` is constant, so each diagonal is
    ``(a)_s * sum_m u_m v_{s-m}`` with ``u_m = (b)_m x^m / ((c)_m m!)`` and
    ``v_n = y^n / ((c')_n n!)``; all three factors are kept as logarithms.
    """
    x, y = pt.x, pt.y
    if abs(x) >= 1:
        raise OutsideDomain(f"double series needs |x| < 1, got {abs(x):g}")
    a, b, c, cp = p.a, p.b, p.c, p.c_prime
    cap = 256
    lu = np.empty(cap, dtype=complex)
    lv = np.empty(cap, dtype=complex)
    lu[0] = lv[0] = 0
    log_a = 0j
    lx, ly = _clog(x), _clog(y)
    acc = OuterSum(ctrl)
    acc.add(ONE)
    with np.errstate(all="ignore"):
        for s in range(1, ctrl.max_terms + 1):
            if s >= cap:
                lu = np.concatenate([lu, np.empty(cap, dtype=complex)])
                lv = np.concatenate([lv, np.empty(cap, dtype=complex)])
                cap *= 2
            m = s - 1
            lu[s] = lu[m] + _clog(b + m) - cmath.log(c + m) + lx - math.log(s)
            lv[s] = lv[m] + ly - cmath.log(cp + m) - math.log(s)
            log_a += _clog(a + m)
            logs = lu[: s + 1] + lv[s::-1]
            top = np.max(logs.real)
            rel = 0.0
            if top == -math.inf or log_a.real == -math.inf:
                term = ZERO
            else:
                parts = np.exp(logs - top)
                inner = complex(parts.sum())
                term = LogScaled.from_log(log_a + top) * inner if inner != 0 else ZERO
                if inner != 0:
                    # rounding in the diagonal sum, plus phase error of exp at large |Im log|
                    phase = float(np.max(np.abs(logs.imag))) + abs(log_a.imag)
                    rel = EPS * (s + phase) * float(np.abs(parts).sum()) / abs(inner)
            if acc.add(term, rel):
                return acc.result(Method.DOUBLE_SERIES)
    raise NoConvergence(f"double series: no convergence after {ctrl.max_terms} diagonals")


def psi1_single_series(p: Psi1Params, pt: Psi1Point, ctrl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """``sum_n (a)_n/(c')_n 2F1[a+n, b; c; x] y^n/n!`` over the whole cut plane."""
    a, b, c, cp = p.a, p.b, p.c, p.c_prime
    x, y = pt.x, pt.y
    acc = OuterSum(ctrl)
    log_coef = 0j
    ly = _clog(y)
    n = 0
    while True:
        check_terms(ctrl, n, "single series")
        if n > 0:
            log_coef += _clog(a + n - 1) - cmath.log(cp + n - 1) + ly - math.log(n)
        if log_coef.real == -math.inf:
            term, rel = ZERO, 0.0
        else:
            inner = f21(a + n, b, c, x, ctrl)
            term = LogScaled.from_log(log_coef) * inner.value
            rel = inner.rel_err
        if acc.add(term, rel):
            return acc.result(Method.SINGLE_SERIES)
        n += 1


def psi1_kummer(p: Psi1Params, pt: Psi1Point, inner="auto", ctrl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """``(1-x)^(-a) Psi1[a, c-b; c, c'; x/(x-1), y/(1-x)]`` via another evaluator."""
    if isinstance(inner, str):
        res = psi1(p.kummer_image(), pt.kummer_image(), inner, ctrl)
    else:
        res = inner(p.kummer_image(), pt.kummer_image(), ctrl=ctrl)
    pref = LogScaled.from_log(-p.a * cmath.log(pt.one_minus_x))
    value = pref * res.value
    err = rescale_error(res.abs_err_est, res.value.exponent + pref.log_abs, value.exponent)
    err += EPS * 4 * abs(value.mantissa)
    return EvalResult(value, err, res.terms_or_nodes, compose(Method.KUMMER, res.method),
                      res.converged, res.flags)


def psi1_integral(p: Psi1Params, pt: Psi1Point, abs_tol: float = 1e-12,
                  ctrl: SeriesControl = DEFAULT_CONTROL, max_level: int = 10) -> EvalResult:
    """Euler-type integral over ``t in (0, 1)`` evaluated by tanh-sinh.

    The 1F1 factor is taken in log-scaled form, so ``y`` in the thousands
    does not overflow.
    """
    a, b, c, cp = p.a, p.b, p.c, p.c_prime
    x, y = pt.x, pt.y
    if not p.integral_ok:
        raise ConstraintViolation("integral representation needs Re c > Re b > 0")
    if x == 0 and y == 0:
        # the Beta normalisation is exact here; quadrature would leave an ulp
        return EvalResult(ONE, 0.0, 1, Method.INTEGRAL)
    e1, e2 = b - 1, c - b - 1
    max_rel = [0.0]

    def integrand(t, tc):
        d = 1 - x * t
        inner = f11(a, cp, y / d, ctrl)
        if inner.rel_err > max_rel[0]:
            max_rel[0] = inner.rel_err
        logw = e1 * math.log(t) + e2 * math.log(tc) - a * cmath.log(d)
        return inner.value * LogScaled.from_log(logw)

    q = tanh_sinh_integrate(integrand, abs_tol=abs_tol, max_level=max_level)
    pref = gamma_ratio([c], [b, c - b])
    value = pref * q.value
    rel = q.rel_err + max_rel[0] + EPS * 16
    return EvalResult(value, rel * abs(value.mantissa), q.terms_or_nodes, Method.INTEGRAL)


def _f22_weighted_series(coef_num, coef_den, log_step, params_of, arg, ctrl, method) -> EvalResult:
    """``sum_n prod(coef_num)_n / (prod(coef_den)_n n!) e^(n log_step) 2F2[params_of(n); arg]``."""
    acc = OuterSum(ctrl)
    log_coef = 0j
    n = 0
    while True:
        check_terms(ctrl, n, f"{method} series")
        if n > 0:
            m = n - 1
            for v in coef_num:
                log_coef += _clog(v + m)
            for v in coef_den:
                log_coef -= cmath.log(v + m)
            log_coef += log_step - math.log(n)
        if log_coef.real == -math.inf:
            term, rel = ZERO, 0.0
        else:
            f = pfq_series(params_of(n), arg, ctrl)
            term = LogScaled.from_log(log_coef) * f.value
            rel = f.rel_err
        if acc.add(term, rel):
            return acc.result(method)
        n += 1


def psi1_near_unit(p: Psi1Params, pt: Psi1Point, ctrl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """Two series in powers of ``1 - x`` with 2F2 coefficients; ``|x - 1| < 1``."""
    a, b, c, cp = p.a, p.b, p.c, p.c_prime
    if not p.near_unit_ok:
        raise DegenerateCase(f"a+b-c = {a + b - c} is an integer")
    if is_integer(a - c):
        raise DegenerateCase(f"a-c = {a - c} is an integer; the second series has a pole")
    w = pt.one_minus_x
    if not abs(w) < 1:
        raise OutsideDomain(f"near-unit expansion needs |x-1| < 1, got {abs(w):g}")
    y = pt.y
    s = c - a - b
    lw = cmath.log(w)

    first = _f22_weighted_series((a, b), (a + b - c + 1,), lw,
                                 lambda n: HypParams((a - c + 1, a + n), (cp, a + b - c + 1 + n)), y,
                                 ctrl, Method.NEAR_UNIT)
    second = _f22_weighted_series((c - a, c - b), (s + 1,), lw,
                                  lambda n: HypParams((a - c + 1, a + b - c - n), (cp, a - c + 1 - n)),
                                  y / w, ctrl, Method.NEAR_UNIT)
    c1 = gamma_ratio([c, s], [c - a, c - b])
    c2 = gamma_ratio([c, -s], [a, b]) * LogScaled.from_log(s * lw)
    return _combine([(c1, first), (c2, second)], Method.NEAR_UNIT)


def large_x_parts(p: Psi1Params, pt: Psi1Point, ctrl: SeriesControl = DEFAULT_CONTROL):
    """The two series ``V1``, ``V2`` of the large-``x`` representation, unweighted."""
    a, b, c, cp = p.a, p.b, p.c, p.c_prime
    if not p.large_x_ok:
        raise DegenerateCase("large-x representation needs a-b and a-c off the integers")
    w = pt.one_minus_x
    if not abs(w) > 1:
        raise OutsideDomain(f"large-x representation needs |x-1| > 1, got {abs(w):g}")
    y = pt.y
    lw = cmath.log(w)
    v1 = _f22_weighted_series((a, c - b), (a - b + 1,), -lw,
                              lambda n: HypParams((a - c + 1, a + n), (cp, a - b + 1 + n)), y / w,
                              ctrl, Method.LARGE_X)
    v2 = _f22_weighted_series((b, c - a), (b - a + 1,), -lw,
                              lambda n: HypParams((a - c + 1, a - b - n), (cp, a - c + 1 - n)), y,
                              ctrl, Method.LARGE_X)
    return v1, v2


def psi1_large_x(p: Psi1Params, pt: Psi1Point, ctrl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """Two series in powers of ``1/(1 - x)`` with 2F2 coefficients; ``|x - 1| > 1``."""
    a, b, c = p.a, p.b, p.c
    v1, v2 = large_x_parts(p, pt, ctrl)
    lw = cmath.log(pt.one_minus_x)
    f1 = gamma_ratio([c, b - a], [b, c - a]) * LogScaled.from_log(-a * lw)
    f2 = gamma_ratio([c, a - b], [a, c - b]) * LogScaled.from_log(-b * lw)
    return _combine([(f1, v1), (f2, v2)], Method.LARGE_X)


def _combine(parts, method) -> EvalResult:
    pieces = []
    for pref, res in parts:
        if pref.is_zero or res.value.is_zero:
            continue
        v = pref * res.value
        pieces.append((v, res.rel_err + EPS * 16, res.terms_or_nodes))
    if not pieces:
        return EvalResult(ZERO, 0.0, sum(r.terms_or_nodes for _, r in parts), method)
    total = ZERO
    for v, _, _ in pieces:
        total = total + v
    if total.is_zero:
        return EvalResult(ZERO, 0.0, sum(n for *_, n in pieces), method, False)
    err = sum(rescale_error(rel * abs(v.mantissa), v.exponent, total.exponent) for v, rel, _ in pieces)
    return EvalResult(total, err, sum(n for *_, n in pieces), method)


def psi1_leading_asym(p: Psi1Params, pt: Psi1Point) -> LogScaled:
    """Leading approximant for ``x -> infinity``, ``y -> +infinity``.

        Gamma(c) Gamma(c') / (Gamma(a) Gamma(c-b)) (y/(1-x))^b y^(a-2b-c') e^y
    """
    if not p.asym_ok:
        raise ConstraintViolation("needs a-b, a-c off the integers and Re(c-b) > 0")
    y = pt.y
    if y.imag != 0 or not y.real > 0:
        raise ConstraintViolation("the leading approximant is stated for real positive y")
    yr = y.real
    a, b, c, cp = p.a, p.b, p.c, p.c_prime
    pref = gamma_ratio([c, cp], [a, c - b])
    if pref.is_zero:
        raise ConstraintViolation("Gamma(a) has a pole; the leading term vanishes")
    log_alg = b * cmath.log(y / pt.one_minus_x) + (a - 2 * b - cp) * math.log(yr)
    return pref * LogScaled.from_log(log_alg + yr)


def psi1_auto(p: Psi1Params, pt: Psi1Point, ctrl: SeriesControl = DEFAULT_CONTROL,
              config: DispatchConfig = DispatchConfig()) -> EvalResult:
    """Pick an evaluator from the point's location and the parameter flags."""
    x, y = pt.x, pt.y
    if abs(x) < config.double_series_radius:
        return psi1_double_series(p, pt, ctrl)
    if abs(x - 1) < config.near_unit_radius and p.near_unit_ok and not is_integer(p.a - p.c):
        return psi1_near_unit(p, pt, ctrl)
    if abs(x - 1) > config.large_x_radius and p.large_x_ok and abs(y) <= config.large_x_max_abs_y:
        return psi1_large_x(p, pt, ctrl)
    if p.integral_ok:
        return psi1_integral(p, pt, ctrl=ctrl)
    try:
        return psi1_single_series(p, pt, ctrl)
    except (OutsideDomain, BranchCut) as exc:
        raise NoApplicableMethod(f"no evaluator covers x={x}, y={y}: {exc}") from exc


EVALUATORS = {
    "auto": psi1_auto,
    "double_series": psi1_double_series,
    "single_series": psi1_single_series,
    "integral": lambda p, pt, ctrl=DEFAULT_CONTROL: psi1_integral(p, pt, ctrl=ctrl),
    "near_unit": psi1_near_unit,
    "large_x": psi1_large_x,
}


def psi1(p: Psi1Params, pt: Psi1Point, method: str = "auto", ctrl: SeriesControl = DEFAULT_CONTROL,
         config: DispatchConfig | None = None) -> EvalResult:
    """Evaluate with a named method; ``kummer:<inner>`` wraps the transformation."""
    if method == "auto" and config is not None:
        return psi1_auto(p, pt, ctrl, config)
    if method == "kummer" or method.startswith("kummer:"):
        inner = method.partition(":")[2] or "auto"
        return psi1_kummer(p, pt, inner, ctrl)
    try:
        fn = EVALUATORS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None
    return fn(p, pt, ctrl=ctrl)


__all__ = [
    "Psi1Params",
    "Psi1Point",
    "AsymRegime",
    "DispatchConfig",
    "psi1",
    "psi1_auto",
    "psi1_double_series",
    "psi1_single_series",
    "psi1_kummer",
    "psi1_integral",
    "psi1_near_unit",
    "psi1_large_x",
    "large_x_parts",
    "psi1_leading_asym",
    "HypergeometricError",
]
