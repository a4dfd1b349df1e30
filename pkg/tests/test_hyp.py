import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from humbert.errors import (
    BranchCut,
    DegenerateConnection,
    DenominatorPole,
    NoConvergence,
    OutsideDisk,
)
from humbert.hyp import (
    Z_DIRECT,
    HypParams,
    SeriesControl,
    f11,
    f21,
    f21_connection,
    f21_direct,
    pfq_series,
    phi_stirling,
    phi_stirling_scaled,
)
from humbert.oracle import pfq_reference


def pfq(num, den, z, **kw):
    return pfq_series(HypParams(tuple(num), tuple(den)), z, **kw)


def rel(u, v):
    return abs(u - v) / abs(v)


# --- generic series ----------------------------------------------------------


def test_exponential():
    assert pfq([], [], 1).to_complex() == pytest.approx(math.e, rel=1e-15)


def test_gauss_log_closed_form():
    assert pfq([1, 1], [2], 0.5).to_complex() == pytest.approx(2 * math.log(2), rel=1e-14)


def test_f22_against_reference():
    got = pfq([1.2, 0.3], [2.1, 0.7], 2).to_complex()
    assert rel(got, pfq_reference([1.2, 0.3], [2.1, 0.7], 2)) < 1e-13


@given(st.floats(0.1, 4), st.floats(-1, 1), st.floats(0.3, 4), st.floats(0.3, 4),
       st.floats(-8, 8), st.floats(-8, 8))
def test_f22_matches_reference(a, b, c, d, zr, zi):
    z = complex(zr, zi)
    ref = pfq_reference([a, b], [c, d], z)
    got = pfq([a, b], [c, d], z)
    assert abs(got.to_complex() - ref) <= 1e-12 * max(abs(ref), 1) + 10 * got.abs_err


def test_large_terms_are_log_scaled():
    # 0F0 at z = 900 is e**900, far beyond double range
    r = pfq([], [], 900)
    assert r.value.log_abs == pytest.approx(900, rel=1e-14)


def test_terminating_series_outside_disk():
    # 2F1[-2, 1; 1; z] = (1 - z)**2
    assert pfq([-2, 1], [1], 3).to_complex() == pytest.approx(4)


def test_series_errors():
    with pytest.raises(DenominatorPole):
        HypParams((1,), (-2,))
    with pytest.raises(OutsideDisk):
        pfq([1, 1], [2], 1.0)
    with pytest.raises(NoConvergence):
        pfq([1, 1], [2], 0.99, ctrl=SeriesControl(max_terms=10))


def test_control_validation():
    for bad in (dict(rel_tol=0), dict(max_terms=0), dict(stagnation_window=0)):
        with pytest.raises(ValueError):
            SeriesControl(**bad)


# --- 1F1 -----------------------------------------------------------------------


def test_f11_examples():
    assert f11(3, 3, 2).to_complex() == pytest.approx(math.exp(2), rel=1e-15)
    assert f11(1, 2, 1).to_complex() == pytest.approx(math.e - 1, rel=1e-15)


def test_f11_equal_parameters_huge_argument():
    v = f11(3, 3, 1001).value
    assert v.exponent == 1001
    assert v.mantissa == pytest.approx(1)


def test_f11_large_argument_against_reference():
    got = f11(3, 2, 800)
    with mpmath.workdps(40):
        ref = mpmath.log(mpmath.hyp1f1(3, 2, 800))
    assert got.value.log_abs == pytest.approx(float(ref), rel=1e-15)
    assert got.rel_err < 1e-12


@pytest.mark.parametrize("z", [-40, -350 + 20j, 1200 + 300j, 500j])
def test_f11_regimes_against_mpmath(z):
    a, c = 1.3 + 0.2j, 2.7
    got = f11(a, c, z).value
    with mpmath.workdps(40):
        ref = mpmath.hyp1f1(a, c, z)
        ref_log = complex(mpmath.log(ref))
    assert got.log_abs == pytest.approx(ref_log.real, abs=1e-12 * max(1, abs(ref_log.real)))
    assert cmath.exp(1j * (cmath.phase(got.mantissa) - ref_log.imag)) == pytest.approx(1, abs=1e-11)


def test_f11_pole():
    with pytest.raises(DenominatorPole):
        f11(1, 0, 1)


def test_f11_regime_switch_is_continuous():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a, c = rng.uniform(0.2, 4, size=2)
        # same argument, once on each side of the threshold
        below = f11(a, c, Z_DIRECT).value
        above = f11(a, c, Z_DIRECT, z_direct=Z_DIRECT * (1 - 1e-9)).value
        assert abs(below.ratio(above) - 1) < 1e-10


# --- 2F1 -----------------------------------------------------------------------


def test_connection_gauss_value():
    assert f21_connection(1, 0.5, 3, 1).to_complex() == pytest.approx(4 / 3, rel=1e-14)


@pytest.mark.parametrize("a,b,c,z", [(0.3, 0.7, 1.6, 0.9), (0.5, 0.25, 2, 0.6), (1.2 + 0.5j, 0.4, 2.3, 0.55 + 0.3j)])
def test_connection_matches_direct(a, b, c, z):
    conn = f21_connection(a, b, c, z).to_complex()
    direct = pfq_reference([a, b], [c], z)
    assert rel(conn, direct) < 1e-11


def test_connection_errors():
    with pytest.raises(DegenerateConnection):
        f21_connection(1, 1, 2, 0.5)
    with pytest.raises(BranchCut):
        f21_connection(0.3, 0.5, 1.6, 1.5)


def test_direct_series_trend_toward_gauss_value():
    a, b, c = 0.3, 0.5, 2.1
    gauss = f21_connection(a, b, c, 1).to_complex().real
    gaps = [abs(f21_direct(a, b, c, z).to_complex().real - gauss) for z in (0.9, 0.99, 0.999)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-2


@pytest.mark.parametrize("z", [-3.0, -0.9 + 2j, 0.5 + 1.5j, 0.95])
def test_f21_policy_against_mpmath(z):
    a, b, c = 1.3, 0.45, 2.2
    with mpmath.workdps(30):
        ref = complex(mpmath.hyp2f1(a, b, c, z))
    assert rel(f21(a, b, c, z).to_complex(), ref) < 1e-12


# --- Stirling generating function ------------------------------------------


def test_phi_closed_forms():
    assert phi_stirling(0, 1) == pytest.approx(math.e - 1, rel=1e-14)
    assert phi_stirling(1, 2) == pytest.approx(2 * math.exp(2), rel=1e-14)
    assert phi_stirling(2, 1) == pytest.approx(2 * math.e, rel=1e-14)


def test_phi_large_argument_is_scaled():
    # Phi_1(x) = x e^x
    v = phi_stirling_scaled(1, 1000)
    assert v.log_abs == pytest.approx(1000 + math.log(1000), rel=1e-14)


@pytest.mark.parametrize("a", [-1, 0.5, 2])
def test_phi_ratio_approaches_one(a):
    gaps = [abs(math.exp(phi_stirling_scaled(a, x).log_abs - a * math.log(x) - x) - 1) for x in (10, 50, 100)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_phi_rejects_nonpositive():
    with pytest.raises(ValueError):
        phi_stirling(1, 0)


# --- global 1F1 bound along shifted parameters --------------------------------


@pytest.mark.parametrize("z", [1, 10 + 5j, 100])
def test_shifted_f11_bound(z):
    a, c, N = 1.3 + 0.2j, 0.4, 0
    assert (c + N + 1) > 0
    for ell in range(N + 1, N + 51):
        gamma = max(1.0, abs(a + ell) / abs(c + ell))
        log_bound = math.log(2 * gamma) + math.sqrt(2) * gamma * abs(z)
        assert f11(a + ell, c + ell, z).value.log_abs <= log_bound
