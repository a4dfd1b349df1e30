"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines inline;
they are also written to the terminal when output is captured.
"""

import cmath
import math
import time

import mpmath
import numpy as np
import pytest

from humbert.asym import Variant, asym_f22_minus_n, f22_fields_series
from humbert.hyp import f11, phi_stirling_scaled
from humbert.oracle import pfq_reference
from humbert.psi1 import (
    AsymRegime,
    Psi1Point,
    psi1,
    psi1_integral,
    psi1_kummer,
    psi1_leading_asym,
)
from humbert.scaled import PochhammerQuery, pochhammer_ratio
from humbert.verify import (
    DISCREPANCY_LIMIT,
    SweepSpec,
    TableSpec,
    draw_params,
    run_crosscheck,
    run_sweep,
    run_table,
)


@pytest.fixture
def report(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {criterion}] {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def rel(u, v):
    return abs(u - v) / abs(v)


# --- 1, 2: printed tables -----------------------------------------------------------


@pytest.mark.parametrize("table_id", [1, 2])
def test_table_reproduction(table_id, report):
    start = time.perf_counter()
    rows = run_table(TableSpec.builtin(table_id))
    elapsed = time.perf_counter() - start
    worst = max(abs(r.ratio - r.expected) for r in rows)
    ok = all(r.ok for r in rows) and elapsed < 30
    ratios = ", ".join(f"{r.x:g}:{r.ratio:.5f}" for r in rows)
    report(table_id, ok, f"table {table_id} ratios {ratios}; worst gap {worst:.1e}; {elapsed:.2f}s")


# --- 3, 4, 5: truncation-error scaling --------------------------------------------


def sweep_summary(variant):
    rows = run_sweep(SweepSpec.builtin(variant))
    slopes = {}
    for r in rows:
        slopes[r.N] = (r.fitted_slope, r.expected_slope)
    return all(r.ok for r in rows), slopes


def fmt_slopes(slopes):
    return " ".join(f"N={n}:{s if isinstance(s, str) else f'{s:+.2f}'}(want {t:+g})"
                    for n, (s, t) in slopes.items())


def test_large_lambda_scaling(report):
    start = time.perf_counter()
    ok, slopes = sweep_summary(Variant.LARGE_LAMBDA)
    elapsed = time.perf_counter() - start
    report(3, ok and elapsed < 10, f"large lambda {fmt_slopes(slopes)}; {elapsed:.2f}s")


def test_minus_n_scaling_and_terminating_case(report):
    ok, slopes = sweep_summary(Variant.MINUS_N)
    a, c, d, z, n = 1.2, 2.1, 0.7, 2, 30
    b = d + 2
    got = asym_f22_minus_n(a, b, c, d, z, n, 3)
    err = rel(got.to_complex(), pfq_reference([a, b - n], [c, d - n], z))
    ok = ok and got.exact and err <= 1e-12
    report(4, ok, f"minus n {fmt_slopes(slopes)}; terminating rel err {err:.1e}")


def test_shifted_parameter_scaling(report):
    variants = (Variant.PFQ_ALL_DOWN, Variant.PFP_ONE_DOWN, Variant.F22_A_DOWN, Variant.F22_BOTH_DOWN)
    parts, ok = [], True
    for v in variants:
        good, slopes = sweep_summary(v)
        ok &= good
        parts.append(f"{v}: {fmt_slopes(slopes)}")
    report(5, ok, "; ".join(parts))


# --- 6: exact identities ------------------------------------------------------------


def test_exact_identities(report):
    rng = np.random.default_rng(2024)
    fields_worst = 0.0
    for _ in range(30):
        a, b = rng.uniform(-2, 4, size=2)
        c, d = rng.uniform(0.2, 4, size=2)
        z = rng.uniform(0, 5) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        ref = pfq_reference([a, b], [c, d], z)
        got = f22_fields_series(a, b, c, d, z).to_complex()
        fields_worst = max(fields_worst, abs(got - ref) / max(abs(ref), 1))

    kummer_worst = 0.0
    for _ in range(30):
        p = draw_params(rng, need_integral=False)
        x = complex(rng.uniform(-3, 0.45), rng.uniform(-0.4, 0.4))
        pt = Psi1Point(x, rng.uniform(0, 2))
        direct = psi1(p, pt, "single_series").value
        mapped = psi1_kummer(p, pt, "single_series").value
        kummer_worst = max(kummer_worst, abs(mapped.ratio(direct) - 1))

    rows = run_crosscheck(seed=1, count=50)
    paired = [r for r in rows if r.paired]
    cross_worst = max(r.max_discrepancy for r in paired)
    unpaired = len(rows) - len(paired)

    ok = (fields_worst <= 1e-11 and kummer_worst <= 1e-10 and all(r.ok for r in rows)
          and cross_worst <= DISCREPANCY_LIMIT and unpaired <= 5)
    report(6, ok, f"fields {fields_worst:.1e}; kummer {kummer_worst:.1e}; "
                  f"evaluator pairs {cross_worst:.1e} over {len(paired)} points ({unpaired} unpaired)")


# --- 7: bound and trend properties ----------------------------------------------------------


def test_bound_and_trend_properties(report):
    rng = np.random.default_rng(7)
    poch_ok = True
    for _ in range(20):
        a, b = rng.uniform(0.2, 3.0, size=2)
        seq = [abs(pochhammer_ratio(PochhammerQuery(a, b, n)).to_complex()) * n ** (b - a)
               for n in (10, 100, 1000, 10000)]
        diffs = np.diff(seq)
        trend = np.all(diffs >= 0) or np.all(diffs <= 0)
        limit = float(mpmath.gamma(b) / mpmath.gamma(a))
        poch_ok &= bool(trend or max(seq) <= 2 * seq[-1]) and abs(seq[-1] / limit - 1) < 1e-3

    phi_ok = True
    for a in (-1, 0.5, 2):
        gaps = [abs(math.exp(phi_stirling_scaled(a, x).log_abs - a * math.log(x) - x) - 1)
                for x in (10, 50, 100)]
        phi_ok &= gaps[0] > gaps[1] > gaps[2]

    bound_ok = True
    a, c, N = 1.3 + 0.2j, 0.4, 0
    for z in (1, 10 + 5j, 100):
        for ell in range(N + 1, N + 51):
            g = max(1.0, abs(a + ell) / abs(c + ell))
            bound_ok &= f11(a + ell, c + ell, z).value.log_abs <= math.log(2 * g) + math.sqrt(2) * g * abs(z)

    report(7, poch_ok and phi_ok and bound_ok,
           f"pochhammer trend {poch_ok}; stirling ratio trend {phi_ok}; shifted 1F1 bound {bound_ok}")


# --- 8: complex rays --------------------------------------------------------------


def test_complex_ray_trend(report):
    parts, ok = [], True
    for table_id in (1, 2):
        spec = TableSpec.builtin(table_id)
        regime = AsymRegime(spec.gamma)
        for theta in (0.0, math.pi / 6):
            gaps = []
            for t in (1e2, 1e3, 3e3):
                pt = regime.point(-t * cmath.exp(1j * theta))
                ratio = psi1_integral(spec.params, pt).value.ratio(psi1_leading_asym(spec.params, pt))
                gaps.append(abs(ratio - 1))
            ok &= all(u > v for u, v in zip(gaps, gaps[1:]))
            parts.append(f"table {table_id} theta={theta:.3f}: " + " > ".join(f"{g:.1e}" for g in gaps))
    report(8, ok, "; ".join(parts))
