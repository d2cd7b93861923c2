"""Range-constrained dynamic network simulator (C++ core)."""

from ._rangenet import (
    ComplexContagionConfig,
    ConfigError,
    CulturalConfig,
    DiffusionTrajectory,
    IoError,
    MetricsRow,
    ModelKind,
    NetworkSnapshot,
    PotionConfig,
    RoundResult,
    SIConfig,
    SimConfig,
    aggregate_rounds,
    average_clustering,
    average_degree,
    average_shortest_path_length,
    components,
    metrics_snapshot,
    run_round,
    run_sweep,
    simulate,
    small_world_index,
)

__all__ = [
    "ComplexContagionConfig",
    "ConfigError",
    "CulturalConfig",
    "DiffusionTrajectory",
    "IoError",
    "MetricsRow",
    "ModelKind",
    "NetworkSnapshot",
    "PotionConfig",
    "RoundResult",
    "SIConfig",
    "SimConfig",
    "aggregate_rounds",
    "average_clustering",
    "average_degree",
    "average_shortest_path_length",
    "components",
    "metrics_snapshot",
    "run_round",
    "run_sweep",
    "simulate",
    "small_world_index",
]
