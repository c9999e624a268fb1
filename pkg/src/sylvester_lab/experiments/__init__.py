from .config import ConfigError, ExperimentConfig, Mode, build_config
from .oracle import OracleCertificate, run_permutation_oracle
from .report import ExperimentReport, emit_report
from .runners import (
    run_baseline_experiment,
    run_bridge_experiment,
    run_experiment,
    run_oracle_experiment,
    run_vertex_count_experiment,
    run_walk_experiment,
)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "ExperimentReport",
    "Mode",
    "OracleCertificate",
    "build_config",
    "emit_report",
    "run_baseline_experiment",
    "run_bridge_experiment",
    "run_experiment",
    "run_oracle_experiment",
    "run_permutation_oracle",
    "run_vertex_count_experiment",
    "run_walk_experiment",
]
