"""Python interface to the SOCC simulation toolkit."""

from socc_lab._core import (
    LdpcCode,
    achievable_sum_rate,
    ba_constrained_capacity,
    beta_prime,
    build_planemap,
    gaussian_capacity,
    gaussian_to_tail,
    make_partition,
    max_row_abs_sum,
    middleton_pdf,
    middleton_samples,
    mse_to_tail,
    nomographic_tail,
    outer_bound_sum_rate,
    planemap_adjoint,
    planemap_forward,
    planemap_infnorm_bound,
    socc_mse,
    timeshare_mse,
    unwrap_signal,
    wrap_signal,
)

__all__ = [
    "LdpcCode",
    "achievable_sum_rate",
    "ba_constrained_capacity",
    "beta_prime",
    "build_planemap",
    "gaussian_capacity",
    "gaussian_to_tail",
    "make_partition",
    "max_row_abs_sum",
    "middleton_pdf",
    "middleton_samples",
    "mse_to_tail",
    "nomographic_tail",
    "outer_bound_sum_rate",
    "planemap_adjoint",
    "planemap_forward",
    "planemap_infnorm_bound",
    "socc_mse",
    "timeshare_mse",
    "unwrap_signal",
    "wrap_signal",
]
