"""Carlitz-Goss zeta values, the Carlitz module, and class formula checks
over F_q[theta] and its constant-field extensions."""

__version__ = "0.1.0"

from .carlitz import carlitz_action, exp_inf, iwasawa_log, log_inf, log_padic, log_z
from .formulas import (
    UnitBasis,
    VerificationReport,
    check_theorem4,
    is_torsion,
    leopoldt_defect,
    regulator_padic,
    stark_beta,
    verify_deformed_K,
    verify_padic_K,
    verify_period_q2,
    verify_taelman_K,
)
from .modstruct import action_matrix, invariant_factors_A, invariant_factors_deformed
from .rings import RingDescriptor, parse_ring, primes_above, residue_field
from .zeta import ZetaConfig, power_sum, zeta_inf, zeta_padic, zeta_poly

__all__ = [
    "RingDescriptor",
    "UnitBasis",
    "VerificationReport",
    "ZetaConfig",
    "__version__",
    "action_matrix",
    "carlitz_action",
    "check_theorem4",
    "exp_inf",
    "invariant_factors_A",
    "invariant_factors_deformed",
    "is_torsion",
    "iwasawa_log",
    "leopoldt_defect",
    "log_inf",
    "log_padic",
    "log_z",
    "parse_ring",
    "power_sum",
    "primes_above",
    "regulator_padic",
    "residue_field",
    "stark_beta",
    "verify_deformed_K",
    "verify_padic_K",
    "verify_period_q2",
    "verify_taelman_K",
    "zeta_inf",
    "zeta_padic",
    "zeta_poly",
]
