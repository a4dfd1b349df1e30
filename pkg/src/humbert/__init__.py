"""Humbert's confluent function Psi1 and generalized hypergeometric functions.

Values are carried as :class:`LogScaled` numbers so that quantities such
as ``exp(3000)`` stay inside double precision.
"""

from .asym import (
    ExpansionRequest,
    ExpansionResult,
    Variant,
    asym_f22_a_down,
    asym_f22_both_down,
    asym_f22_large_lambda,
    asym_f22_large_z,
    asym_f22_minus_n,
    asym_pfp_one_down,
    asym_pfq_all_down,
    f22_fields_series,
    pfp_luke_series,
)
from .errors import HypergeometricError
from .hyp import (
    EvalResult,
    HypParams,
    Method,
    SeriesControl,
    f11,
    f21,
    f21_connection,
    pfq_series,
    phi_stirling,
)
from .psi1 import (
    AsymRegime,
    DispatchConfig,
    Psi1Params,
    Psi1Point,
    psi1,
    psi1_leading_asym,
)
from .quadrature import tanh_sinh_integrate
from .scaled import LogScaled, log_gamma, pochhammer, pochhammer_ratio

__version__ = "0.1.0"

__all__ = [
    "AsymRegime",
    "DispatchConfig",
    "EvalResult",
    "ExpansionRequest",
    "ExpansionResult",
    "HypParams",
    "HypergeometricError",
    "LogScaled",
    "Method",
    "Psi1Params",
    "Psi1Point",
    "SeriesControl",
    "Variant",
    "asym_f22_a_down",
    "asym_f22_both_down",
    "asym_f22_large_lambda",
    "asym_f22_large_z",
    "asym_f22_minus_n",
    "asym_pfp_one_down",
    "asym_pfq_all_down",
    "f11",
    "f21",
    "f21_connection",
    "f22_fields_series",
    "log_gamma",
    "pfp_luke_series",
    "pfq_series",
    "phi_stirling",
    "pochhammer",
    "pochhammer_ratio",
    "psi1",
    "psi1_leading_asym",
    "tanh_sinh_integrate",
]
