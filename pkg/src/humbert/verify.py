"""Reproducible verification runs: the printed tables, error-scaling
sweeps and randomized cross-checks between Psi1 evaluators.

Each runner returns plain row objects; :mod:`humbert.cli` turns them into
CSV.  Rows are produced in input order and every random draw comes from a
seeded :class:`numpy.random.Generator`, so repeated runs are identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .asym import Variant, expand, expected_slope, shifted_shape
from .errors import (
    BranchCut,
    DegenerateConnection,
    HypergeometricError,
    MaxLevelExceeded,
    NoConvergence,
    OutsideDomain,
)
from .hyp import DEFAULT_CONTROL, SeriesControl
from .oracle import pfq_reference
from .psi1 import DispatchConfig, Psi1Params, Psi1Point, psi1, psi1_leading_asym
from .scaled import integer_distance

# --- tables ----------------------------------------------------------------

DEFAULT_X = (-10.0, -100.0, -1000.0, -2000.0, -3000.0)

# ratios Psi1 / AE as printed, five decimals
PRINTED_RATIOS = {
    1: {-10.0: 1.06951, -100.0: 1.00745, -1000.0: 1.00075, -2000.0: 1.00037, -3000.0: 1.00025},
    2: {-10.0: 0.98215, -100.0: 1.00223, -1000.0: 1.00025, -2000.0: 1.00012, -3000.0: 1.00008},
}


def printed_tolerance(x: float) -> float:
    """Slack against a five-decimal printed ratio; the ``x = -10`` rows are pre-asymptotic."""
    return 5e-4 if abs(x) < 100 else 5e-5


@dataclass(frozen=True)
class TableSpec:
    table_id: int
    params: Psi1Params
    gamma: float
    x_values: tuple[float, ...] = DEFAULT_X

    @classmethod
    def builtin(cls, table_id: int, x_values=None) -> TableSpec:
        if table_id == 1:
            p, g = Psi1Params(3, 1.5, 2.5, 3), 1.0
        elif table_id == 2:
            p, g = Psi1Params(3, 1.5, 2.5, 2), 0.2
        else:
            raise ValueError(f"no table {table_id}")
        xs = DEFAULT_X if x_values is None else tuple(float(x) for x in x_values)
        return cls(table_id, p, g, xs)


@dataclass(frozen=True)
class TableRow:
    x: float
    y: float
    log_psi1: float
    log_ae: float
    ratio: float
    method: str
    abs_err_est: float
    expected: float | None = None

    @property
    def ok(self) -> bool:
        if self.expected is None:
            return True
        return abs(self.ratio - self.expected) <= printed_tolerance(self.x)


def run_table(spec: TableSpec, method: str = "integral", ctrl: SeriesControl = DEFAULT_CONTROL,
              dispatch: DispatchConfig | None = None) -> list[TableRow]:
    rows = []
    printed = PRINTED_RATIOS.get(spec.table_id, {})
    for x in spec.x_values:
        y = spec.gamma * (1 - x)
        pt = Psi1Point(x, y)
        res = psi1(spec.params, pt, method, ctrl, dispatch)
        ae = psi1_leading_asym(spec.params, pt)
        ratio = res.value.ratio(ae).real
        rows.append(TableRow(x, y, res.value.log_abs, ae.log_abs, ratio, str(res.method),
                             res.rel_err, printed.get(x)))
    return rows


# --- error-scaling sweeps ---------------------------------------------------

DEFAULT_SWEEPS = {
    Variant.LARGE_LAMBDA: (dict(a=1.2, b=0.3, c=2.1, d=0.7, z=2), (25, 50, 100, 200)),
    Variant.MINUS_N: (dict(a=1.2, b=0.3, c=2.1, d=0.7, z=2), (20, 40, 80, 160)),
    Variant.PFQ_ALL_DOWN: (dict(num_shift=[1.1], den_shift=[1.7, 0.45], num_fix=[0.6], den_fix=[], z=1.5),
                           (20, 40, 80, 160)),
    Variant.PFP_ONE_DOWN: (dict(num=[1.1], den=[1.9], b=0.4, d=0.8, z=1.5), (20, 40, 80, 160)),
    Variant.F22_A_DOWN: (dict(a=3.2, b=0.6, c=1.4, d=0.8, z=2), (20, 40, 80, 160)),
    Variant.F22_BOTH_DOWN: (dict(a=1.3, b=0.6, c=2.4, d=0.9, z=1.5), (20, 40, 80, 160)),
}

SLOPE_SLACK = 0.5
EXACT_REL = 1e-12


@dataclass(frozen=True)
class SweepSpec:
    target: Variant
    base_params: dict
    scale_points: tuple
    orders: tuple[int, ...] = (1, 2, 3)

    def __post_init__(self):
        object.__setattr__(self, "target", Variant(self.target))
        if self.target is Variant.LARGE_Z_LEADING:
            raise ValueError("the large-z leading term has no truncation order to sweep")
        pts = tuple(self.scale_points)
        if len(pts) < 2:
            raise ValueError("a sweep needs at least two scale points")
        if any(abs(b) <= abs(a) for a, b in zip(pts, pts[1:])):
            raise ValueError("scale points must be strictly increasing")
        object.__setattr__(self, "scale_points", pts)
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))

    @classmethod
    def builtin(cls, target, orders=(1, 2, 3)) -> SweepSpec:
        params, scales = DEFAULT_SWEEPS[Variant(target)]
        return cls(Variant(target), dict(params), scales, orders)


@dataclass(frozen=True)
class SweepRow:
    scale: complex
    N: int
    expansion_value: complex
    oracle_value: complex
    abs_error: float
    fitted_slope: float | str
    expected_slope: float

    @property
    def ok(self) -> bool:
        if self.fitted_slope == "exact":
            return True
        return abs(self.fitted_slope - self.expected_slope) <= SLOPE_SLACK


def fit_slope(scales, errors) -> float:
    """Least-squares slope of ``log error`` against ``log |scale|``."""
    s = np.log(np.abs(np.asarray(scales, dtype=complex)))
    e = np.log(np.asarray(errors, dtype=float))
    return float(np.polyfit(s, e, 1)[0])


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    rows = []
    for N in spec.orders:
        block = []
        all_exact = True
        for scale in spec.scale_points:
            res = expand(spec.target, spec.base_params, scale, N)
            num, den, z = shifted_shape(spec.target, spec.base_params, scale)
            oracle = pfq_reference(num, den, z)
            value = res.to_complex()
            err = abs(value - oracle)
            all_exact &= res.exact or err <= EXACT_REL * abs(oracle)
            block.append((scale, value, oracle, err))
        if all_exact:
            slope = "exact"
        else:
            slope = fit_slope([b[0] for b in block], [max(b[3], 1e-300) for b in block])
        target = expected_slope(spec.target, spec.base_params, N)
        rows.extend(SweepRow(s, N, v, o, e, slope, target) for s, v, o, e in block)
    return rows


# --- randomized cross-checks -------------------------------------------------

CATEGORIES = ("disk", "near_unit", "large_x", "kummer", "integral")
PARAM_RANGE = (0.2, 4.0)
INTEGER_MARGIN = 0.05
DISCREPANCY_LIMIT = 1e-8
# |y/(1-x)| above this makes every representation sum terms ~exp(|y/(1-x)|)
# times larger than the result, so no method is accurate enough to compare
RATIO_CAP = 8.0
# the integral's node cutoff leaves a tail ~exp(-600 * edge exponent)
INTEGRAL_EDGE = 0.1
# two results each within half the limit cannot honestly differ by more than it
PRECISION_GATE = DISCREPANCY_LIMIT / 2

# a method failing its own domain test, or not settling within its budget,
# is simply not applicable at that point
_NOT_APPLICABLE = (OutsideDomain, DegenerateConnection, BranchCut, MaxLevelExceeded, NoConvergence)


@dataclass(frozen=True)
class CrossRow:
    index: int
    category: str
    params: Psi1Params
    point: Psi1Point
    methods: tuple[str, ...]
    max_discrepancy: float
    error: str = ""

    @property
    def paired(self) -> bool:
        """At least two methods were accurate enough to compare."""
        return len(self.methods) >= 2

    @property
    def status(self) -> str:
        if self.error:
            return self.error
        if not self.paired:
            return "unpaired"
        return "ok" if self.max_discrepancy <= DISCREPANCY_LIMIT else "discrepancy"

    @property
    def ok(self) -> bool:
        return self.status in ("ok", "unpaired")


def draw_params(rng: np.random.Generator, need_integral: bool) -> Psi1Params:
    lo, hi = PARAM_RANGE
    while True:
        a, b, c, cp = rng.uniform(lo, hi, size=4)
        if need_integral and c - b < 0.2:
            continue
        if min(integer_distance(v) for v in (a - b, a - c, a + b - c)) < INTEGER_MARGIN:
            continue
        return Psi1Params(a, b, c, cp)


def _polar(rng, center, r_lo, r_hi, cut_margin=0.4):
    r = rng.uniform(r_lo, r_hi)
    theta = rng.uniform(cut_margin, 2 * math.pi - cut_margin)
    return center + r * complex(math.cos(theta), math.sin(theta))


def draw_point(rng: np.random.Generator, category: str) -> Psi1Point:
    if category == "disk":
        r, theta = rng.uniform(0, 0.7), rng.uniform(-math.pi, math.pi)
        x, y_max = r * complex(math.cos(theta), math.sin(theta)), 3.0
    elif category == "near_unit":
        x, y_max = _polar(rng, 1, 0.1, 0.7), 3.0
    elif category == "large_x":
        x, y_max = _polar(rng, 1, 2.0, 15.0), 4.0
    elif category == "kummer":
        x, y_max = complex(rng.uniform(-2.5, -0.3)), 3.0
    elif category == "integral":
        x, y_max = _polar(rng, 1, 0.5, 10.0), 6.0
    else:
        raise ValueError(f"unknown category {category!r}")
    y = rng.uniform(0, min(y_max, RATIO_CAP * abs(1 - x)))
    return Psi1Point(x, y)


def applicable_methods(p: Psi1Params, pt: Psi1Point, dispatch: DispatchConfig = DispatchConfig()):
    """Methods whose convergence domain holds ``pt``."""
    x = pt.x
    out = ["single_series", "kummer:single_series"]
    if abs(x) < dispatch.double_series_radius:
        out.append("double_series")
    if abs(x / (x - 1)) < dispatch.double_series_radius:
        out.append("kummer:double_series")
    if abs(x - 1) < 1 and p.near_unit_ok and integer_distance(p.a - p.c) > 0:
        out.append("near_unit")
    if abs(x - 1) > 1 and p.large_x_ok:
        out.append("large_x")
    if p.integral_ok and min(p.b.real, (p.c - p.b).real) >= INTEGRAL_EDGE:
        out.append("integral")
    return out


def compare_methods(p: Psi1Params, pt: Psi1Point, methods, ctrl: SeriesControl = DEFAULT_CONTROL):
    """Evaluate each method; return ``(compared methods, max relative pairwise gap)``.

    A result whose own error estimate exceeds :data:`PRECISION_GATE` cannot
    be checked at :data:`DISCREPANCY_LIMIT` and is left out, as is a method
    that rejects the point.
    """
    values = {}
    for m in methods:
        try:
            res = psi1(p, pt, m, ctrl)
        except _NOT_APPLICABLE:
            continue
        if res.rel_err <= PRECISION_GATE:
            values[m] = res.value
    worst = 0.0
    names = list(values)
    for i, u in enumerate(names):
        for v in names[i + 1:]:
            vu, vv = values[u], values[v]
            scale = max(vu.log_abs, vv.log_abs)
            diff = vu - vv
            if diff.is_zero or scale == -math.inf:
                continue
            worst = max(worst, math.exp(diff.log_abs - scale))
    return tuple(names), worst


def run_crosscheck(seed: int, count: int, ctrl: SeriesControl = DEFAULT_CONTROL,
                   dispatch: DispatchConfig = DispatchConfig()) -> list[CrossRow]:
    rng = np.random.default_rng(seed)
    rows = []
    for i in range(count):
        cat = CATEGORIES[i % len(CATEGORIES)]
        p = draw_params(rng, need_integral=cat == "integral")
        pt = draw_point(rng, cat)
        try:
            used, worst = compare_methods(p, pt, applicable_methods(p, pt, dispatch), ctrl)
            err = ""
            if len(used) < 2:
                worst = math.nan
        except HypergeometricError as exc:
            used, worst, err = (), math.nan, type(exc).__name__
        rows.append(CrossRow(i, cat, p, pt, used, worst, err))
    return rows


__all__ = [
    "CATEGORIES",
    "DEFAULT_SWEEPS",
    "DISCREPANCY_LIMIT",
    "INTEGRAL_EDGE",
    "PRECISION_GATE",
    "PRINTED_RATIOS",
    "RATIO_CAP",
    "CrossRow",
    "SweepRow",
    "SweepSpec",
    "TableRow",
    "TableSpec",
    "applicable_methods",
    "compare_methods",
    "draw_params",
    "draw_point",
    "fit_slope",
    "printed_tolerance",
    "run_crosscheck",
    "run_sweep",
    "run_table",
]
