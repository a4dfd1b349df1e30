import math

import mpmath
import numpy as np
import pytest

from humbert.asym import (
    ExpansionRequest,
    Variant,
    asym_f22_a_down,
    asym_f22_both_down,
    asym_f22_large_lambda,
    asym_f22_large_z,
    asym_f22_minus_n,
    asym_pfp_one_down,
    asym_pfq_all_down,
    expand,
    expected_slope,
    f22_fields_series,
    pfp_luke_series,
    shifted_shape,
)
from humbert.errors import (
    ConstraintViolation,
    DenominatorPole,
    DomainViolation,
    GammaPole,
    IntegerDegeneracy,
    SectorViolation,
    ShapeViolation,
)
from humbert.hyp import HypParams, Method, f11, pfq_series
from humbert.oracle import pfq_reference
from humbert.verify import DEFAULT_SWEEPS

BASE = (1.2, 0.3, 2.1, 0.7, 2)


def rel(u, v):
    return abs(u - v) / abs(v)


def err(variant, params, scale, N):
    num, den, z = shifted_shape(variant, params, scale)
    ref = pfq_reference(num, den, z)
    return abs(expand(variant, params, scale, N).to_complex() - ref) / abs(ref)


# --- exact transformation series -------------------------------------------


def test_fields_collapses_when_b_equals_d():
    r = f22_fields_series(1, 0.8, 2, 0.8, 1)
    assert r.to_complex() == pytest.approx(math.e - 1, rel=1e-14)
    assert r.method == Method.FIELDS


def test_fields_terminating_structure():
    # b = d + 2: only k = 0, 1, 2 carry weight
    a, c, d, z = 1.2, 2.1, 0.7, 2
    got = f22_fields_series(a, d + 2, c, d, z).to_complex()
    assert rel(got, pfq_reference([a, d + 2], [c, d], z)) < 1e-13
    assert asym_f22_minus_n(a, d + 2, c, d, z, 5, 3).exact


def test_fields_matches_direct():
    a, b, c, d, z = BASE
    assert rel(f22_fields_series(a, b, c, d, z).to_complex(), pfq_reference([a, b], [c, d], z)) < 1e-11


def test_fields_random_draws():
    rng = np.random.default_rng(2)
    for _ in range(30):
        a, b = rng.uniform(-2, 4, size=2)
        c, d = rng.uniform(0.2, 4, size=2)
        r = rng.uniform(0, 5)
        z = r * complex(math.cos(t := rng.uniform(-math.pi, math.pi)), math.sin(t))
        ref = pfq_reference([a, b], [c, d], z)
        assert abs(f22_fields_series(a, b, c, d, z).to_complex() - ref) <= 1e-11 * max(abs(ref), 1)


def test_luke_smallest_instance():
    # 1F1[1; 2; 1] from shifted exponentials
    assert pfp_luke_series([], [], 1, 2, 1).to_complex() == pytest.approx(math.e - 1, rel=1e-14)


def test_luke_collapses_when_b_equals_d():
    got = pfp_luke_series([1.1], [1.9], 0.6, 0.6, 1.5).to_complex()
    assert got == pytest.approx(f11(1.1, 1.9, 1.5).to_complex(), rel=1e-14)


def test_luke_matches_direct():
    got = pfp_luke_series([1.1], [1.9], 0.4, 0.8, 1.5 - 0.7j).to_complex()
    assert rel(got, pfq_reference([1.1, 0.4], [1.9, 0.8], 1.5 - 0.7j)) < 1e-11


def test_luke_gauss_shape():
    got = pfp_luke_series([0.7, 1.2], [1.6], 0.4, 0.9, -1.5).to_complex()
    ref = complex(mpmath.hyp3f2(0.7, 1.2, 0.4, 1.6, 0.9, -1.5))
    assert rel(got, ref) < 1e-12


def test_luke_errors():
    with pytest.raises(DomainViolation):
        pfp_luke_series([1, 1], [2], 0.4, 0.8, 0.6)
    with pytest.raises(ShapeViolation):
        pfp_luke_series([1, 1], [], 0.4, 0.8, 0.1)
    with pytest.raises(DenominatorPole):
        pfp_luke_series([1], [2], 0.4, -1, 0.1)


# --- requests ----------------------------------------------------------------------


def test_request_validation():
    with pytest.raises(ConstraintViolation):
        ExpansionRequest(Variant.MINUS_N, 0, 10)
    with pytest.raises(ConstraintViolation):
        ExpansionRequest(Variant.MINUS_N, 2, 10.5)
    assert ExpansionRequest("large_lambda", 2, 10.5).variant is Variant.LARGE_LAMBDA


# --- large lambda ------------------------------------------------------------------


def test_large_lambda_first_order_is_f11():
    a, b, c, d, z = BASE
    got = asym_f22_large_lambda(a, b, c, d, z, 100, 1)
    assert got.to_complex() == pytest.approx(f11(a, c, z).to_complex(), rel=1e-15)
    assert got.first_omitted_term > 0


def test_large_lambda_b_equals_d_exact():
    got = asym_f22_large_lambda(1.2, 0.7, 2.1, 0.7, 2, 50, 1)
    assert got.exact
    assert rel(got.to_complex(), pfq_reference([1.2, 50.7], [2.1, 50.7], 2)) < 1e-14


def test_large_lambda_error_constant():
    e50, e100 = (err(Variant.LARGE_LAMBDA, dict(a=1.2, b=0.3, c=2.1, d=0.7, z=2), lam, 3) for lam in (50, 100))
    C = e50 * 50**3
    assert e100 <= 1.5 * C * 100.0**-3


def test_large_lambda_sector():
    with pytest.raises(SectorViolation):
        asym_f22_large_lambda(*BASE, -100 + 1j, 2)
    with pytest.raises(DenominatorPole):
        asym_f22_large_lambda(*BASE, -0.7 - 5, 2)


# --- minus n ------------------------------------------------------------------------


def test_minus_n_terminating_case():
    a, c, d, z = 1.2, 2.1, 0.7, 2
    b = d + 2
    got = asym_f22_minus_n(a, b, c, d, z, 30, 3)
    assert got.exact
    assert rel(got.to_complex(), pfq_reference([a, b - 30], [c, d - 30], z)) < 1e-12


def test_minus_n_first_order():
    a, b, c, d, z = BASE
    assert asym_f22_minus_n(a, b, c, d, z, 40, 1).to_complex() == pytest.approx(f11(a, c, z).to_complex())


def test_minus_n_error_ratio():
    P = dict(a=1.2, b=0.3, c=2.1, d=0.7, z=2)
    e40, e80 = (err(Variant.MINUS_N, P, n, 2) for n in (40, 80))
    assert 0.5 * 0.25 <= e80 / e40 <= 2 * 0.25


def test_minus_n_integer_d():
    with pytest.raises(IntegerDegeneracy):
        asym_f22_minus_n(1.2, 0.3, 2.1, 1, 2, 40, 2)


def test_minus_n_near_integer_flag():
    assert asym_f22_minus_n(1.2, 0.3, 2.1, 0.7 + 1e-8, 2, 40, 2).near_degenerate is False
    assert asym_f22_minus_n(1.2, 0.3, 2.1, 1 + 1e-7, 2, 40, 2).near_degenerate


# --- p+rFq+s all down ---------------------------------------------------------------


def test_all_down_first_order_is_one():
    assert asym_pfq_all_down([1.1], [1.7, 0.45], [0.6], [], 1.5, 40, 1).to_complex() == 1


def test_all_down_p_zero_scaling():
    P = dict(num_shift=[], den_shift=[1.7], num_fix=[0.6], den_fix=[], z=1.5)
    assert expected_slope(Variant.PFQ_ALL_DOWN, P, 2) == -2
    e40, e80 = (err(Variant.PFQ_ALL_DOWN, P, n, 2) for n in (40, 80))
    assert 0.4 * 0.25 <= e80 / e40 <= 2.5 * 0.25


def test_all_down_agreement_at_n60():
    P = dict(num_shift=[1.1], den_shift=[1.7, 0.45], num_fix=[0.6], den_fix=[], z=1.5)
    for N in (1, 2, 3):
        assert err(Variant.PFQ_ALL_DOWN, P, 60, N) <= 10 * 60.0**-N


def test_all_down_shape_and_degeneracy():
    with pytest.raises(ShapeViolation):
        asym_pfq_all_down([1.1], [1.7], [0.6], [], 1.5, 40, 2)
    with pytest.raises(ShapeViolation):
        asym_pfq_all_down([], [1.7], [0.6, 0.2, 0.3], [], 1.5, 40, 2)
    with pytest.raises(IntegerDegeneracy):
        asym_pfq_all_down([1.1], [2, 0.45], [0.6], [], 1.5, 40, 2)


# --- p+1Fp+1 one down -----------------------------------------------------------------


def test_pfp_p_zero_matches_minus_n_shape():
    # with no a-row the inner functions are exponentials
    b, d, z, n = 0.3, 0.7, 1.5, 40
    got = asym_pfp_one_down([], [], b, d, z, n, 3).to_complex()
    ref = pfq_reference([b - n], [d - n], z)
    assert rel(got, ref) < 10 * n**-3


def test_pfp_consistent_with_minus_n():
    a, b, c, d, z = BASE
    for n, N in ((40, 2), (80, 3)):
        u = asym_pfp_one_down([a], [c], b, d, z, n, N).to_complex()
        v = asym_f22_minus_n(a, b, c, d, z, n, N).to_complex()
        assert rel(u, v) < 1e-12


def test_pfp_near_terminating():
    b, d = 1.8, 0.8
    got = asym_pfp_one_down([1.1], [1.9], b, d, 1.5, 40, 2)
    assert got.exact
    assert rel(got.to_complex(), pfq_reference([1.1, b - 40], [1.9, d - 40], 1.5)) < 1e-12


def test_pfp_scaling():
    P = dict(num=[1.1], den=[1.9], b=0.4, d=0.8, z=1.5)
    e40, e80 = (err(Variant.PFP_ONE_DOWN, P, n, 2) for n in (40, 80))
    assert 0.4 * 0.25 <= e80 / e40 <= 2.5 * 0.25


def test_pfp_errors():
    with pytest.raises(IntegerDegeneracy):
        asym_pfp_one_down([1.1], [1.9], 2, 0.8, 1.5, 40, 2)
    with pytest.raises(DenominatorPole):
        asym_pfp_one_down([1.1], [-1], 0.4, 0.8, 1.5, 40, 2)
    with pytest.raises(ShapeViolation):
        asym_pfp_one_down([1.1], [], 0.4, 0.8, 1.5, 40, 2)


# --- 2F2 special shapes ----------------------------------------------------------


def test_a_down_trivial():
    assert asym_f22_a_down(3.2, 0.6, 1.4, 0.8, 2, 40, 1).to_complex() == 1
    assert asym_f22_a_down(3.2, 0.6, 1.4, 0.8, 0, 40, 3).to_complex() == 1


def test_a_down_scaling():
    P = dict(a=3.2, b=0.6, c=1.4, d=0.8, z=2)
    e40, e80 = (err(Variant.F22_A_DOWN, P, n, 3) for n in (40, 80))
    assert 0.4 / 8 <= e80 / e40 <= 2.5 / 8


def test_a_down_integer():
    with pytest.raises(IntegerDegeneracy):
        asym_f22_a_down(3.2, 0.6, 2, 0.8, 2, 40, 2)


def test_both_down_b_equals_d():
    a, c, d, z, n = 1.3, 2.4, 0.9, 1.5, 40
    got = asym_f22_both_down(a, d, c, d, z, n, 1)
    assert got.exact
    assert rel(got.to_complex(), pfq_reference([a - n, d - n], [c - n, d - n], z)) < 1e-12


def test_both_down_trivial():
    assert asym_f22_both_down(1.3, 0.6, 2.4, 0.9, 0, 40, 1).to_complex() == pytest.approx(1, rel=1e-15)


def test_both_down_scaling():
    P = dict(a=1.3, b=0.6, c=2.4, d=0.9, z=1.5)
    e40, e80 = (err(Variant.F22_BOTH_DOWN, P, n, 2) for n in (40, 80))
    assert 0.4 * 0.25 <= e80 / e40 <= 2.5 * 0.25


def test_both_down_integer():
    with pytest.raises(IntegerDegeneracy):
        asym_f22_both_down(1, 0.6, 2.4, 0.9, 1.5, 40, 2)


# --- halving law over all sweeps -----------------------------------------------


@pytest.mark.parametrize("variant", list(DEFAULT_SWEEPS))
@pytest.mark.parametrize("N", [1, 2, 3])
def test_error_halving_law(variant, N):
    params, scales = DEFAULT_SWEEPS[variant]
    lo, hi = scales[1], scales[2]
    ratio = err(variant, params, hi, N) / err(variant, params, lo, N)
    target = 2.0 ** expected_slope(variant, params, N)
    assert target / 2.5 <= ratio <= target * 2.5


# --- large z ---------------------------------------------------------------------


def test_large_z_structure():
    v = asym_f22_large_z(1.3, 0.6, 1.3, 0.6, 0, 40)
    assert v.log_abs == pytest.approx(40, rel=1e-15)


def test_large_z_ratio_monotone():
    a, b, c, d = 1.2, 0.3, 2.1, 0.7
    gaps = []
    for z in (20, 40, 80):
        ref = pfq_series(HypParams((a, b), (c, d)), z).value
        gaps.append(abs(ref.ratio(asym_f22_large_z(a, b, c, d, 0, z)) - 1))
    assert gaps[0] > gaps[1] > gaps[2]


def test_large_z_with_shift():
    a, b, c, d = 1.2, 0.3, 2.1, 0.7
    ref = pfq_series(HypParams((a, b + 5), (c, d + 5)), 50).value
    assert abs(ref.ratio(asym_f22_large_z(a, b, c, d, 5, 50)) - 1) < 0.1


def test_large_z_errors():
    with pytest.raises(SectorViolation):
        asym_f22_large_z(1.2, 0.3, 2.1, 0.7, 0, -20)
    with pytest.raises(GammaPole):
        asym_f22_large_z(-1, 0.3, 2.1, 0.7, 0, 20)
    with pytest.raises(GammaPole):
        asym_f22_large_z(1.2, -3, 2.1, 0.7, 3, 20)
