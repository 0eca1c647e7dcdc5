"""Numeric evaluation: Schur zeta values, integral representations, xi and eta."""
from .integrals import eta_classical_eval, eta_integral, mzv_integral_eval, mzv_star_integral_eval
from .special import eta_special_value, xi_special_value
from .xi import XI_SPEC, xi_eval, xi_series_oracle
from .zeta import in_convergence_domain, mzv_eval, mzv_star_eval, schur_zeta_eval, schur_zeta_via_decomposition

__all__ = [
    "in_convergence_domain", "mzv_eval", "mzv_star_eval", "schur_zeta_eval",
    "schur_zeta_via_decomposition", "mzv_integral_eval", "mzv_star_integral_eval",
    "eta_classical_eval", "eta_integral", "xi_eval", "xi_series_oracle", "XI_SPEC",
    "xi_special_value", "eta_special_value",
]
