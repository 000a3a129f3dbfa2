"""Exact meta-converse bounds, quasi-perfect code checks and error probabilities
for symmetric discrete channels."""
from .bounds import (
    BoundReport, erasure_error_bound, jscc_bound, fixed_gamma_bound, matched_code_error, mds_bound,
    metaconverse_symmetric, optimize_psi, psi_threshold, psi_mds,
    lemma3_bound, lemma4_error, psi_eq39,
)
from .channel import (
    ERASURE, Channel, ErasureErrorParams, OutputDistribution, bec, bsc, erasure_error_channel, is_symmetric,
    product_channel, q_in_Qc, qstar_erasure, uniform_output,
)
from .geometry import classify_jscc, classify_qp, radii, sphere, spectrum
from .hypothesis import NPPoint, alpha_beta, alpha_beta_oracle, test_errors
from .sourcecoding import (
    excess_distortion, lossy_attainment_check, lossy_bound_code, lossy_bound_uniform, lossy_bound_kostina,
    theorem3_check,
)
from .numeric import BudgetExceeded, HypothesisViolation, ratio

__version__ = "0.1.0"
