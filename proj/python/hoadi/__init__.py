"""High-order ADI pricing of European options under stochastic volatility.

Thin Python layer over the C++ core: full-grid and sparse-grid-combination
solves, the semi-analytic Heston cross-check, and a few plumbing helpers.
"""

from ._hoadi import (  # noqa: F401
    Domain,
    DriftForm,
    ModelParams,
    OptionSpec,
    __version__,
    combination_plan,
    estimate_order,
    heston_put_price,
    payoff,
    price_full,
    price_sparse,
    smoothing_kernel_table,
    solve_full_surface,
    transform,
    untransform_price,
)

__all__ = [
    "Domain",
    "DriftForm",
    "ModelParams",
    "OptionSpec",
    "__version__",
    "combination_plan",
    "estimate_order",
    "heston_put_price",
    "payoff",
    "price_full",
    "price_sparse",
    "smoothing_kernel_table",
    "solve_full_surface",
    "transform",
    "untransform_price",
]
