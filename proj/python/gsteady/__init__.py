"""Particle simulation of driven granular gases with variable restitution."""

from ._core import (
    ConfigError,
    DissipationSpec,
    Ensemble,
    EngineConfig,
    InputError,
    MajorantViolation,
    MapBundle,
    RestitutionKind,
    RestitutionModel,
    RunConfig,
    SteadyReport,
    StepSizeError,
    energy_loss,
    lambda_from_mu,
    maxwellian_distance,
    moments,
    post_collision_sigma,
    povzner_margin,
    run_cli,
    run_to_steady,
    theta_limit,
    verify,
    zeta_zero,
)

__all__ = [
    "ConfigError",
    "DissipationSpec",
    "Ensemble",
    "EngineConfig",
    "InputError",
    "MajorantViolation",
    "MapBundle",
    "RestitutionKind",
    "RestitutionModel",
    "RunConfig",
    "SteadyReport",
    "StepSizeError",
    "energy_loss",
    "lambda_from_mu",
    "maxwellian_distance",
    "moments",
    "post_collision_sigma",
    "povzner_margin",
    "run_cli",
    "run_to_steady",
    "theta_limit",
    "verify",
    "zeta_zero",
]
