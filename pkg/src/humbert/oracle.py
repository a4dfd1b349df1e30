"""Extended-precision reference values, used only for verification.

These sum the defining series term by term in mpmath at a working
precision well beyond double, so that cancellation among terms of size
``exp(|z|)`` or among Pochhammer factors near ``-n`` does not reach the
digits being compared.
"""

from __future__ import annotations

import mpmath

from .errors import DenominatorPole, NoConvergence, OutsideDisk

DEFAULT_DPS = 40


def _mpc(z):
    z = complex(z)
    return mpmath.mpc(z.real, z.imag)


def pfq_reference(num, den, z, dps: int = DEFAULT_DPS, max_terms: int = 200_000) -> complex:
    """Term-by-term ``pFq`` sum, stopped once terms fall below ``10**-(dps-5)``."""
    num = [complex(a) for a in num]
    den = [complex(b) for b in den]
    for b in den:
        if b.imag == 0 and b.real <= 0 and b.real == int(b.real):
            raise DenominatorPole(f"denominator parameter {b} is a nonpositive integer")
    if len(num) == len(den) + 1 and abs(z) >= 1:
        raise OutsideDisk("reference sum needs |z| < 1 when p = q + 1")
    with mpmath.workdps(dps):
        a = [_mpc(v) for v in num]
        b = [_mpc(v) for v in den]
        zz = _mpc(z)
        eps = mpmath.mpf(10) ** (-(dps - 5))
        term = mpmath.mpc(1)
        total = mpmath.mpc(1)
        small = 0
        for k in range(max_terms):
            ratio = zz / (k + 1)
            for v in a:
                ratio *= v + k
            for v in b:
                ratio /= v + k
            term *= ratio
            total += term
            if abs(term) <= eps * abs(total):
                small += 1
                if small >= 3:
                    return complex(total)
            else:
                small = 0
    raise NoConvergence(f"reference sum did not settle in {max_terms} terms")


def psi1_reference(a, b, c, c_prime, x, y, dps: int = DEFAULT_DPS, max_terms: int = 5000) -> complex:
    """``Psi1`` via the single series over ``n`` with mpmath's own ``2F1``.

    ``mpmath.hyp2f1`` continues analytically to the cut plane, so this
    covers every ``x`` off ``[1, inf)``.
    """
    with mpmath.workdps(dps):
        a, b, c, cp = (_mpc(v) for v in (a, b, c, c_prime))
        x, y = _mpc(x), _mpc(y)
        eps = mpmath.mpf(10) ** (-(dps - 5))
        coef = mpmath.mpc(1)
        total = mpmath.mpc(0)
        small = 0
        for n in range(max_terms):
            if n:
                coef *= (a + n - 1) / (cp + n - 1) * y / n
            term = coef * mpmath.hyp2f1(a + n, b, c, x)
            total += term
            if n > 5 and abs(term) <= eps * abs(total):
                small += 1
                if small >= 3:
                    return complex(total)
            else:
                small = 0
    raise NoConvergence(f"reference Psi1 sum did not settle in {max_terms} terms")
