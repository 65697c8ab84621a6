"""Distributed Nash equilibrium seeking over directed communication graphs."""

from nesim._core import (  # noqa: F401
    AlgorithmSpec,
    ConnectivityEigenvalues,
    ConvergenceReport,
    DiGraph,
    GameConstants,
    GameInterface,
    IntegrationConfig,
    IoError,
    NumericalError,
    OrthogonalSplit,
    QuadraticGame,
    ScalingMode,
    SeekerState,
    SpectralData,
    StopReason,
    Trajectory,
    ValidationError,
    Variant,
    analyze_graph,
    check_certificate,
    connectivity_eigenvalues,
    consensus_error,
    estimator_field,
    extended_pseudogradient,
    field_adaptive,
    field_balanced,
    field_nominal,
    finite_difference_check,
    fit_exponential_rate,
    initial_state,
    integrate,
    left_eigenvector,
    load_game,
    load_graph,
    lyapunov_decay_rate,
    lyapunov_values,
    min_gain,
    ne_error,
    orthogonal_split,
    pseudogradient,
    scaled_laplacian,
)

__all__ = [name for name in dir() if not name.startswith("_")]
