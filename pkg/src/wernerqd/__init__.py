"""Quantum discord and logarithmic negativity of the generalized n-qubit Werner state."""

from .discord import (
    ConvexityWitness,
    DiscordBreakdown,
    MeasurementAngles,
    conditional_entropy,
    discord_closed,
    discord_gap,
    discord_limit,
    discord_numeric,
    discord_second_derivative,
    joint_entropy,
    measurement_projectors,
    post_measurement_state,
)
from .entropy import shannon_entropy_bits
from .errors import (
    CapacityError,
    ConvergenceError,
    DimensionError,
    DomainError,
    NegativeEigenvalueError,
    ValidationError,
    WernerError,
)
from .linalg import (
    Spectrum,
    eig_hermitian,
    kron,
    partial_trace_a,
    partial_trace_b,
    partial_transpose_b,
    trace_norm,
)
from .negativity import (
    NegativityResult,
    log_negativity,
    log_negativity_limit,
    negativity_derivative,
    negativity_second_derivative,
    separability_threshold,
)
from .werner import (
    StructuredSpectrum,
    WernerParams,
    build_ghz,
    build_werner_dense,
    pt_spectrum,
    reduced_state_b,
    werner_spectrum,
)

__version__ = "0.1.0"
