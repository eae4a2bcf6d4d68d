"""Two-timescale EXTRA: decentralized non-convex optimization over graphs."""

from ._ttextra import (
    EigenDecomposition,
    Graph,
    InfeasibleParameterError,
    MixingMatrix,
    Problem,
    RunConfig,
    SelectOverrides,
    SelectedParameters,
    SolverForm,
    SpectralCertificate,
    StepSizes,
    StopReason,
    Trace,
    TraceRecord,
    ValidationClause,
    ValidationReport,
    WeightScheme,
    beta_lower_bound,
    build_w_tilde,
    certify,
    choose_a,
    consensus_error,
    degrees,
    erdos_renyi_connected,
    estimate_smoothness,
    evaluate,
    gaussian_start,
    gradient,
    is_connected,
    laplacian_based,
    make_convex_quadratic,
    make_regularized_ls,
    make_welsch_regression,
    metropolis,
    psd_sqrt,
    rho_lower_bound,
    ring,
    run,
    select_parameters,
    spectral,
    stationarity,
    validate_assumption2,
)

__all__ = [
    "EigenDecomposition",
    "Graph",
    "InfeasibleParameterError",
    "MixingMatrix",
    "Problem",
    "RunConfig",
    "SelectOverrides",
    "SelectedParameters",
    "SolverForm",
    "SpectralCertificate",
    "StepSizes",
    "StopReason",
    "Trace",
    "TraceRecord",
    "ValidationClause",
    "ValidationReport",
    "WeightScheme",
    "beta_lower_bound",
    "build_w_tilde",
    "certify",
    "choose_a",
    "consensus_error",
    "degrees",
    "erdos_renyi_connected",
    "estimate_smoothness",
    "evaluate",
    "gaussian_start",
    "gradient",
    "is_connected",
    "laplacian_based",
    "make_convex_quadratic",
    "make_regularized_ls",
    "make_welsch_regression",
    "metropolis",
    "psd_sqrt",
    "rho_lower_bound",
    "ring",
    "run",
    "select_parameters",
    "spectral",
    "stationarity",
    "validate_assumption2",
]
