from .norms import jump_magnitude, l2_difference, l2_error, observed_order, observed_orders
from .operators import local_limit_amplitude, moment_condition, nonlocal_operator_apply, second_moment_remainder
from .studies import delta_study, h_study, jump_study, operator_limit_study
from .verifiers import green_identity_residual, nonlocal_action_matrix, run_verification, strong_residual
