"""Adaptively redundant memory cells with scripted fault injection."""

from .adaptation import AdaptationPolicy, RedundancyController, RedundancyEvent
from .harness import (
    ExperimentConfig,
    ExperimentReport,
    cost,
    emit_trace,
    format_summary,
    run_experiment,
)
from .injection import (
    Burst,
    End,
    InjectionEngine,
    Prng,
    Scramble,
    ScriptError,
    Sleep,
    format_script,
    parse_script,
)
from .memory import CellCounters, LayoutMap, PhysicalMemory, ReadOutcome, RedundantStore, make_layout
from .voting import RiskSample, VoteResult, compute_risk, majority_vote
from .scripts import EXPERIMENT_SCRIPT, GAUSSIAN_SCRIPT, script_path

__version__ = "0.1.0"
