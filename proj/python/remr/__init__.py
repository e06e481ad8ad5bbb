"""Deadline reliability of staged tasks on dynamic edge computing networks."""

from ._remr import (
    CompletionTime,
    GuardExceeded,
    PlanReliability,
    Pmf,
    ReliabilityReport,
    Scenario,
    ScenarioError,
    SimResult,
    TraceError,
    data_sizes,
    evaluate,
    exact_reliability,
    feasible_vectors,
    inclusion_exclusion_reliability,
    ingest_trace,
    load_scenario,
    machines_in,
    minimal_vectors,
    parse_scenario,
    rsdp_reliability,
    simulate,
    total_time,
    union_reliability,
)

__all__ = [name for name in dir() if not name.startswith("_")]
