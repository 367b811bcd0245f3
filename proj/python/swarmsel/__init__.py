"""Distributed on-line evolution of swarm controllers.

Thin package over the compiled ``_core`` extension.
"""

from ._core import (  # noqa: F401
    ArenaError,
    ArenaParams,
    ConfigError,
    ExperimentConfig,
    MeasureParams,
    Rng,
    SelectionMethod,
    SimulationConfig,
    TaskKind,
    accumulated_above,
    activate,
    analyze,
    avg_accumulated,
    compute_measures,
    compute_target,
    derive_seed,
    fixed_budget,
    genome_length,
    load_config,
    mann_whitney_u,
    median_curve,
    mutate,
    parse_config,
    random_genome,
    run_experiment,
    run_simulation,
    select,
    sense,
    time_to_target,
)

__version__ = "0.1.0"
