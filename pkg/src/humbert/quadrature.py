"""Tanh-sinh quadrature on (0, 1) for log-scaled integrands.

The map ``t = (1 + tanh(pi/2 sinh u)) / 2`` clusters nodes doubly
exponentially at both ends, so algebraic endpoint singularities
``t**(b-1) (1-t)**(c-b-1)`` need no special handling.  The integrand is
called as ``f(t, 1 - t)`` with both arguments computed without
cancellation, which matters near ``t = 1``.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import MaxLevelExceeded, NonFiniteIntegrand
from .hyp import EPS, EvalResult, Method
from .scaled import LogScaled, ls_normalize

# |s| is capped so that 1 - t stays a normal float (e**-600)
_S_MAX = 300.0
_U_MAX = math.asinh(2 * _S_MAX / math.pi)
MIN_LEVEL = 3
# per-sample relative noise, in ulps, assumed when judging convergence
NOISE_ULPS = 64


@lru_cache(maxsize=None)
def level_nodes(level: int):
    """Nodes first introduced at ``level`` (step ``2**-level``).

    Returns read-only arrays ``(t, 1 - t, weight)``; weights include the
    Jacobian but not the step size.
    """
    h = 2.0**-level
    kmax = int(_U_MAX / h)
    k = np.arange(-kmax, kmax + 1)
    if level > 0:
        k = k[k % 2 == 1]
    u = k * h
    s = 0.5 * math.pi * np.sinh(u)
    e = np.exp(-2 * np.abs(s))
    # t = 1/(1+exp(-2s)), 1-t = 1/(1+exp(2s)), written to avoid cancellation
    small = e / (1 + e)
    big = 1 / (1 + e)
    t = np.where(s >= 0, big, small)
    tc = np.where(s >= 0, small, big)
    # dt/du = (pi/4) cosh(u) sech(s)^2
    w = 0.25 * math.pi * np.cosh(u) * 4 * e / (1 + e) ** 2
    for arr in (t, tc, w):
        arr.setflags(write=False)
    return t, tc, w


def _weighted_sum(f, level):
    t, tc, w = level_nodes(level)
    mant = np.empty(len(t), dtype=complex)
    expo = np.empty(len(t))
    for i in range(len(t)):
        v = f(float(t[i]), float(tc[i]))
        if not isinstance(v, LogScaled):
            v = complex(v)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise NonFiniteIntegrand(f"integrand is {v} at t={t[i]!r}")
            v = LogScaled.from_value(v)
        elif not (math.isfinite(v.mantissa.real) and math.isfinite(v.mantissa.imag)
                  and math.isfinite(v.exponent)):
            raise NonFiniteIntegrand(f"integrand is {v} at t={t[i]!r}")
        mant[i] = v.mantissa * w[i]
        expo[i] = v.exponent
    nz = mant != 0
    if not nz.any():
        return LogScaled(), LogScaled()
    top = float(expo[nz].max())
    scaled = mant[nz] * np.exp(expo[nz] - top)
    total = ls_normalize(LogScaled(complex(scaled.sum()), top))
    magnitude = ls_normalize(LogScaled(complex(np.abs(scaled).sum()), top))
    return total, magnitude


def tanh_sinh_integrate(f, abs_tol: float = 1e-12, max_level: int = 10) -> EvalResult:
    """Integrate ``f(t, 1-t)`` over (0, 1).

    Levels halve the step until two successive estimates agree to
    ``abs_tol``, measured as a relative difference in log-scaled form.
    """
    raw_total = LogScaled()
    abs_total = LogScaled()
    previous = None
    nodes = 0
    for level in range(max_level + 1):
        part, magnitude = _weighted_sum(f, level)
        nodes += len(level_nodes(level)[0])
        raw_total = raw_total + part
        abs_total = abs_total + magnitude
        estimate = raw_total * (2.0**-level)
        if previous is not None and level >= MIN_LEVEL:
            if estimate.is_zero and previous.is_zero:
                return EvalResult(estimate, 0.0, nodes, Method.QUADRATURE)
            if not estimate.is_zero:
                diff = abs((estimate - previous).ratio(estimate))
                # rounding floor from summing terms of both signs: once level
                # differences drop below it, further levels only add noise
                floor = NOISE_ULPS * EPS * abs(abs_total.ratio(raw_total)) if not raw_total.is_zero else 0.0
                if diff < max(abs_tol, floor):
                    err = (diff + floor) * abs(estimate.mantissa)
                    return EvalResult(estimate, err, nodes, Method.QUADRATURE)
        previous = estimate
    raise MaxLevelExceeded(f"tanh-sinh did not reach {abs_tol:g} within {max_level} levels")
