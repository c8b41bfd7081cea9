"""Rankin-Selberg numerical lab: tau(n), c_n, error terms, Voronoi sums and Z(s)."""

from ._core import (
    CoeffTable,
    ConstantMethod,
    CorruptCache,
    DivisionSingularity,
    ErrorTermEvaluator,
    EstimationFailure,
    InsufficientTable,
    MainTermConstant,
    OutOfDomain,
    PoleError,
    QuadratureMethod,
    TauOverflowError,
    TauTable,
    ZFunction,
    beta_fit,
    bounds_table,
    chi_factor,
    chi_log_slope,
    delta1_identity_scan,
    estimate_main_constant,
    hecke_verify,
    main_constant_candidates,
    mean_square_delta,
    mean_square_delta1,
    rankin_coeffs,
    read_tau_cache,
    residual_scan,
    shimura_b,
    tau_table,
    voronoi_sum,
    write_tau_cache,
    zeta_eval,
)

__version__ = "0.1.0"
