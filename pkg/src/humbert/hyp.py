"""Generic pFq series engine and regime-switched 1F1 / 2F1 evaluators."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

from .errors import (
    BranchCut,
    DegenerateConnection,
    DenominatorPole,
    NoConvergence,
    OutsideDisk,
    OutsideDomain,
)
from .scaled import (
    ONE,
    ZERO,
    LogScaled,
    gamma_ratio,
    is_integer,
    ls_normalize,
)

EPS = 2.0**-52

# above this |z| the 1F1 evaluator switches to its large-argument expansion
Z_DIRECT = 300.0

# 2F1 domain policy: direct series inside |z| <= R, connection formula inside |1-z| <= R
F21_RADIUS = 0.8
# fallback limit for the direct series when the connection formula is degenerate
F21_SLOW_RADIUS = 0.97

# rescale running partial sums once they pass this magnitude
_RESCALE_AT = 1e250


class Method(str, enum.Enum):
    DIRECT_SERIES = "DIRECT_SERIES"
    ASYMPTOTIC = "ASYMPTOTIC"
    EXPONENTIAL = "EXPONENTIAL"
    CONNECTION = "CONNECTION"
    PFAFF = "PFAFF"
    QUADRATURE = "QUADRATURE"
    FIELDS = "FIELDS"
    LUKE = "LUKE"
    DOUBLE_SERIES = "DOUBLE_SERIES"
    SINGLE_SERIES = "SINGLE_SERIES"
    KUMMER = "KUMMER"
    INTEGRAL = "INTEGRAL"
    NEAR_UNIT = "NEAR_UNIT"
    LARGE_X = "LARGE_X"

    def __str__(self) -> str:
        return self.value


def compose(outer, inner) -> str:
    """Method tag for a transformation wrapped around another evaluator."""
    return f"{outer}+{inner}"


@dataclass(frozen=True)
class SeriesControl:
    rel_tol: float = 1e-13
    max_terms: int = 100_000
    stagnation_window: int = 3

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if self.stagnation_window < 1:
            raise ValueError("stagnation_window must be at least 1")


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class EvalResult:
    """Value plus an error estimate.

    ``abs_err_est`` is expressed in units of ``exp(value.exponent)``, so
    ``abs_err_est / |value.mantissa|`` is the relative error estimate.
    """

    value: LogScaled
    abs_err_est: float
    terms_or_nodes: int
    method: str
    converged: bool = True
    flags: tuple[str, ...] = field(default=())

    @property
    def rel_err(self) -> float:
        m = abs(self.value.mantissa)
        return math.inf if m == 0 else self.abs_err_est / m

    @property
    def abs_err(self) -> float:
        """Absolute error estimate as an ordinary float (may overflow)."""
        return _scaled_to_float(self.abs_err_est, self.value.exponent)

    def to_complex(self) -> complex:
        return self.value.to_complex()

    def __complex__(self) -> complex:
        return self.value.to_complex()


def _scaled_to_float(x: float, exponent: float) -> float:
    if x == 0:
        return 0.0
    return LogScaled(complex(x), exponent).to_complex().real


def rescale_error(err: float, from_exponent: float, to_exponent: float) -> float:
    """Move an error expressed against one exponent onto another."""
    if err == 0:
        return 0.0
    d = from_exponent - to_exponent
    if d > 700:
        return math.inf
    return err * math.exp(d) if d > -745 else 0.0


def is_pole(z) -> bool:
    """True when ``z`` is exactly a nonpositive integer."""
    z = complex(z)
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


@dataclass(frozen=True)
class HypParams:
    numerator: tuple[complex, ...]
    denominator: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(complex(a) for a in self.numerator))
        object.__setattr__(self, "denominator", tuple(complex(b) for b in self.denominator))
        for b in self.denominator:
            if is_pole(b):
                raise DenominatorPole(f"denominator parameter {b} is a nonpositive integer")
        if self.p > self.q + 1:
            raise ValueError(f"{self.p}F{self.q} diverges for every z != 0 (needs p <= q+1)")

    @property
    def p(self) -> int:
        return len(self.numerator)

    @property
    def q(self) -> int:
        return len(self.denominator)

    @property
    def terminates(self) -> bool:
        return any(is_pole(a) for a in self.numerator)


def sum_terms(ratio, ctrl: SeriesControl, what: str = "series"):
    """Sum ``1 + t1 + t2 + ...`` where ``t_{k+1} = t_k * ratio(k)``.

    Returns ``(LogScaled sum, scaled error, terms used)``.  Partial sums
    are rescaled whenever they approach overflow, so ratios leading to
    ``exp(1000)``-sized terms are fine.
    """
    tol = ctrl.rel_tol
    window = ctrl.stagnation_window
    term = 1 + 0j
    total = 1 + 0j
    shift = 0.0
    sum_abs = 1.0
    small = 0
    k = 0
    while True:
        if k >= ctrl.max_terms:
            raise NoConvergence(f"{what}: no convergence after {ctrl.max_terms} terms")
        r = ratio(k)
        term *= r
        k += 1
        total += term
        at = abs(term)
        sum_abs += at
        # geometric tail bound, so slowly converging series are not cut short
        ar = abs(r)
        tail = at / (1 - ar) if ar < 0.999 else at * 1e3
        if at > _RESCALE_AT or sum_abs > _RESCALE_AT:
            s = math.log(sum_abs)
            scale = math.exp(-s)
            term *= scale
            total *= scale
            sum_abs *= scale
            at *= scale
            tail *= scale
            shift += s
        if not math.isfinite(at):
            raise NoConvergence(f"{what}: non-finite term at k={k}")
        if tail <= tol * abs(total):
            small += 1
            if small >= window:
                break
        else:
            small = 0
    value = ls_normalize(LogScaled(total, shift))
    err = tail + EPS * sum_abs
    return value, rescale_error(err, shift, value.exponent), k + 1


# --- outer series whose terms are themselves function values ------------------


class OuterSum:
    """Stagnation-terminated accumulation of LogScaled terms."""

    def __init__(self, ctrl: SeriesControl):
        self.ctrl = ctrl
        self.total = ZERO
        self.err_terms = []  # (err, exponent)
        self.small = 0
        self.prev_abs = None
        self.count = 0
        self.max_log = -math.inf

    def add(self, term: LogScaled, rel_err: float = 0.0) -> bool:
        """Add a term; return True once the sum has stagnated."""
        self.count += 1
        self.total = self.total + term
        la = term.log_abs
        self.max_log = max(self.max_log, la)
        if rel_err and not term.is_zero:
            self.err_terms.append((rel_err * abs(term.mantissa), term.exponent))
        if term.is_zero:
            tail_log = -math.inf
        else:
            tail_log = la
            if self.prev_abs is not None and self.prev_abs > -math.inf:
                r = math.exp(min(la - self.prev_abs, 0.0))
                tail_log = la - math.log1p(-r) if r < 0.999 else la + math.log(1e3)
        self.prev_abs = la
        self.last_tail_log = tail_log
        if self.total.is_zero:
            stagnant = tail_log == -math.inf
        else:
            stagnant = tail_log <= math.log(self.ctrl.rel_tol) + self.total.log_abs
        self.small = self.small + 1 if stagnant else 0
        return self.small >= self.ctrl.stagnation_window

    def result(self, method) -> EvalResult:
        total = self.total
        if total.is_zero:
            return EvalResult(ZERO, 0.0, self.count, method)
        err = sum(rescale_error(e, ex, total.exponent) for e, ex in self.err_terms)
        if self.last_tail_log > -math.inf:
            err += math.exp(min(self.last_tail_log - total.exponent, 700))
        # cancellation floor
        err += EPS * 4 * math.exp(min(self.max_log - total.exponent, 700))
        return EvalResult(total, err, self.count, method)


def check_terms(ctrl, n, what):
    if n >= ctrl.max_terms:
        raise NoConvergence(f"{what}: no convergence after {ctrl.max_terms} terms")


def pfq_series(params: HypParams, z, ctrl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """Partial sums of the defining pFq power series."""
    z = complex(z)
    a = params.numerator
    b = params.denominator
    if params.p == params.q + 1 and abs(z) >= 1 and not params.terminates:
        raise OutsideDisk(f"{params.p}F{params.q} series diverges at |z|={abs(z):g}")
    if z == 0:
        return EvalResult(ONE, 0.0, 1, Method.DIRECT_SERIES)

    if params.p == 0 and params.q == 0:
        def ratio(k):
            return z / (k + 1)
    elif params.p == 1 and params.q == 1:
        a0, b0 = a[0], b[0]

        def ratio(k):
            return (a0 + k) / ((b0 + k) * (k + 1)) * z
    elif params.p == 2 and params.q == 1:
        a0, a1, b0 = a[0], a[1], b[0]

        def ratio(k):
            return (a0 + k) * (a1 + k) / ((b0 + k) * (k + 1)) * z
    elif params.p == 2 and params.q == 2:
        a0, a1, b0, b1 = a[0], a[1], b[0], b[1]

        def ratio(k):
            return (a0 + k) * (a1 + k) / ((b0 + k) * (b1 + k) * (k + 1)) * z
    else:
        def ratio(k):
            num = z
            for ai in a:
                num *= ai + k
            den = k + 1
            for bi in b:
                den *= bi + k
            return num / den

    value, err, n = sum_terms(ratio, ctrl, f"{params.p}F{params.q}")
    return EvalResult(value, err, n, Method.DIRECT_SERIES)


# --- 1F1 ---------------------------------------------------------------------


def f11(a, c, z, ctrl: SeriesControl = DEFAULT_CONTROL, z_direct: float = Z_DIRECT) -> EvalResult:
    """Confluent hypergeometric 1F1[a; c; z] for arguments of any size.

    Direct series for ``|z| <= z_direct`` (after the Kummer reflection
    when ``Re z < 0`` to avoid cancellation), large-argument expansion
    beyond that.  Results are log-scaled, so ``z`` in the thousands is fine.
    """
    a, c, z = complex(a), complex(c), complex(z)
    if is_pole(c):
        raise DenominatorPole(f"1F1 denominator {c} is a nonpositive integer")
    if a == c:
        return EvalResult(LogScaled.from_log(z), EPS * 4, 1, Method.EXPONENTIAL)
    if z == 0 or a == 0:
        return EvalResult(ONE, 0.0, 1, Method.DIRECT_SERIES)
    if is_pole(a):
        # terminating polynomial, exact at any argument
        return pfq_series(HypParams((a,), (c,)), z, ctrl)
    if z.real < 0:
        inner = _f11_nonneg(c - a, c, -z, ctrl, z_direct)
        value = LogScaled.from_log(z) * inner.value
        err = rescale_error(inner.abs_err_est, inner.value.exponent + z.real, value.exponent)
        return EvalResult(value, err, inner.terms_or_nodes, compose(Method.KUMMER, inner.method),
                          inner.converged, inner.flags)
    return _f11_nonneg(a, c, z, ctrl, z_direct)


def _f11_nonneg(a, c, z, ctrl, z_direct) -> EvalResult:
    if a == c:
        return EvalResult(LogScaled.from_log(z), EPS * 4, 1, Method.EXPONENTIAL)
    if abs(z) <= z_direct or is_pole(a):
        return pfq_series(HypParams((a,), (c,)), z, ctrl)
    return f11_asymptotic(a, c, z, ctrl)


def _asymptotic_sum(p, q, w, ctrl):
    """Sum ``sum_s (p)_s (q)_s / s! * w**-s`` up to its smallest term.

    Returns ``(sum, smallest |term| reached, terms used, terminated)``.
    """
    inv = 1 / w
    term = 1 + 0j
    total = 1 + 0j
    smallest = 1.0
    s = 0
    while s < ctrl.max_terms:
        nxt = term * (p + s) * (q + s) / (s + 1) * inv
        an = abs(nxt)
        if an == 0:
            return total, 0.0, s + 1, True
        if an >= abs(term) and s > 0:
            break
        term = nxt
        total += term
        s += 1
        smallest = an
        if an <= EPS * 1e-3 * abs(total):
            break
    return total, smallest, s + 1, False


def f11_asymptotic(a, c, z, ctrl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """Large-|z| expansion of 1F1 with both exponential and algebraic parts.

    The dominant part ``Gamma(c)/Gamma(a) e^z z^(a-c) sum (c-a)_s(1-a)_s/(s! z^s)``
    is summed to its smallest term; the algebraic companion is added when
    it is not negligible.  Valid for ``Re z >= 0``.
    """
    a, c, z = complex(a), complex(c), complex(z)
    logz = cmath.log(z)
    flags = []
    s2, small2, n2, exact2 = _asymptotic_sum(1 - a, c - a, z, ctrl)
    pref2 = gamma_ratio([c], [a])
    dominant = pref2 * LogScaled.from_log(z + (a - c) * logz) * LogScaled.from_value(s2)
    err = 0.0 if exact2 else small2 / max(abs(s2), 1e-300)
    total = dominant
    terms = n2
    sign = 1 if z.imag >= 0 else -1
    pref1 = gamma_ratio([c], [c - a])
    if not pref1.is_zero:
        log_mag1 = pref1.log_abs - (a * logz).real + math.pi * abs(a.imag)
        if dominant.is_zero or log_mag1 > dominant.log_abs - 60:
            s1, small1, n1, exact1 = _asymptotic_sum(a, a - c + 1, -z, ctrl)
            recessive = pref1 * LogScaled.from_log(sign * 1j * math.pi * a - a * logz) * LogScaled.from_value(s1)
            total = dominant + recessive
            terms += n1
            if not exact1:
                err += small1 * math.exp(min(recessive.log_abs - total.log_abs, 700))
    rel = err
    converged = True
    if rel > ctrl.rel_tol:
        flags.append("PrecisionLoss")
        converged = False
    abs_err = (rel + EPS * 8) * abs(total.mantissa)
    return EvalResult(total, abs_err, terms, Method.ASYMPTOTIC, converged, tuple(flags))


# --- 2F1 ---------------------------------------------------------------------


def f21_direct(a, b, c, z, ctrl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    return pfq_series(HypParams((a, b), (c,)), z, ctrl)


def f21_connection(a, b, c, z, ctrl: SeriesControl = DEFAULT_CONTROL) -> EvalResult:
    """2F1 through the two-term connection formula in ``1 - z``.

    Needs ``|1 - z| < 1`` for the resulting series to converge and
    ``c - a - b`` off the integers.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if is_pole(c):
        raise DenominatorPole(f"2F1 denominator {c} is a nonpositive integer")
    if z.imag == 0 and z.real > 1:
        raise BranchCut(f"z={z.real:g} lies on the cut [1, inf)")
    if z.imag == 0 and z.real <= 0:
        raise BranchCut("connection formula needs |arg z| < pi")
    s = c - a - b
    if is_integer(s):
        raise DegenerateConnection(f"c-a-b = {s} is an integer")
    w = 1 - z
    if abs(w) >= 1:
        raise OutsideDisk(f"connection series needs |1-z| < 1, got {abs(w):g}")

    first_pref = gamma_ratio([c, s], [c - a, c - b])
    if z == 1:
        if s.real <= 0:
            raise OutsideDomain("2F1 diverges at z=1 when Re(c-a-b) <= 0")
        return EvalResult(first_pref, EPS * 8 * abs(first_pref.mantissa), 1, Method.CONNECTION)

    pieces = []
    errs = []
    terms = 0
    if not first_pref.is_zero:
        r1 = pfq_series(HypParams((a, b), (1 - s,)), w, ctrl)
        v1 = first_pref * r1.value
        pieces.append(v1)
        errs.append(((r1.rel_err + EPS * 8) * abs(v1.mantissa), v1.exponent))
        terms += r1.terms_or_nodes
    second_pref = gamma_ratio([c, -s], [a, b])
    if not second_pref.is_zero:
        r2 = pfq_series(HypParams((c - a, c - b), (1 + s,)), w, ctrl)
        v2 = second_pref * LogScaled.from_log(s * cmath.log(w)) * r2.value
        pieces.append(v2)
        errs.append(((r2.rel_err + EPS * 8) * abs(v2.mantissa), v2.exponent))
        terms += r2.terms_or_nodes
    if not pieces:
        return EvalResult(ZERO, 0.0, terms, Method.CONNECTION)
    total = pieces[0]
    for p in pieces[1:]:
        total = total + p
    err = sum(rescale_error(e, ex, total.exponent) for e, ex in errs)
    return EvalResult(total, err, terms, Method.CONNECTION)


def f21(a, b, c, z, ctrl: SeriesControl = DEFAULT_CONTROL, radius: float = F21_RADIUS) -> EvalResult:
    """Gauss 2F1 under the domain policy.

    Direct series for ``|z| <= radius``, connection formula for
    ``|1-z| <= radius``; otherwise the Pfaff map ``z -> z/(z-1)`` is tried
    and the same two rules applied to the image.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if is_pole(c):
        raise DenominatorPole(f"2F1 denominator {c} is a nonpositive integer")
    if z.imag == 0 and z.real > 1:
        raise BranchCut(f"z={z.real:g} lies on the cut [1, inf)")
    if abs(z) <= radius or is_pole(a) or is_pole(b):
        return f21_direct(a, b, c, z, ctrl)
    if abs(1 - z) <= radius:
        if is_integer(c - a - b) and abs(z) < F21_SLOW_RADIUS:
            # integer c-a-b has no two-term connection formula; the direct
            # series still converges, just slowly
            return f21_direct(a, b, c, z, ctrl)
        return f21_connection(a, b, c, z, ctrl)
    w = z / (z - 1)
    if abs(w) <= radius or abs(1 - w) <= radius:
        # 2F1[a,b;c;z] = (1-z)^(-a) 2F1[a, c-b; c; z/(z-1)]
        inner = f21_direct(a, c - b, c, w, ctrl) if abs(w) <= radius else f21_connection(a, c - b, c, w, ctrl)
        pref = LogScaled.from_log(-a * cmath.log(1 - z))
        value = pref * inner.value
        err = rescale_error(inner.abs_err_est, inner.value.exponent + pref.log_abs, value.exponent)
        return EvalResult(value, err, inner.terms_or_nodes, compose(Method.PFAFF, inner.method))
    raise OutsideDomain(f"2F1 at z={z} is outside the supported regions")


# --- Stirling generating function --------------------------------------------


def phi_stirling_scaled(a: float, x: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> LogScaled:
    """``sum_{k>=1} k**a x**k / k!`` as a LogScaled value."""
    if not x > 0:
        raise ValueError("x must be positive")
    a = float(a)
    # terms peak near k ~ x; pre-scale by the peak so nothing overflows
    shift = 0.0 if x <= 300 else x + a * math.log(x)
    logx = math.log(x)
    total = 0.0
    sum_abs = 0.0
    small = 0
    k = 1
    log_term = logx  # k = 1: 1**a * x / 1!
    while True:
        if k > ctrl.max_terms:
            raise NoConvergence(f"Phi_{a}({x}): no convergence after {ctrl.max_terms} terms")
        t = math.exp(log_term - shift)
        total += t
        sum_abs += t
        if t <= ctrl.rel_tol * total and k > x:
            small += 1
            if small >= ctrl.stagnation_window:
                break
        else:
            small = 0
        k += 1
        log_term += a * math.log(k / (k - 1)) + logx - math.log(k)
    return ls_normalize(LogScaled(complex(total), shift))


def phi_stirling(a: float, x: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    return float(phi_stirling_scaled(a, x, ctrl))
