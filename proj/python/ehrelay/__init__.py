"""Scheduling and outage analysis for an energy-harvesting relay network."""

from ._core import (
    ConfigError,
    DomainError,
    EhrelayError,
    EnumerationLimitError,
    FitError,
    OutageEstimate,
    QuadratureError,
    RankEstimate,
    ScheduleDecision,
    SystemConfig,
    Thresholds,
    analytic_outage,
    approach1_outage,
    beta_integral,
    compute_thresholds,
    db_to_linear,
    destination_outage,
    estimate_outage,
    fit_diversity_slope,
    greedy_outage,
    harvested_power,
    maxmin_outage,
    prob_decode_set_size,
    run_cli,
    schedule,
    sweep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
