"""Study orchestration: seeded runs, aggregation, t-tests, decision tables."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import __version__
from .config import StudyConfig, config_hash
from .decision import DecisionTable, build_table, practicality_correction, rank
from .errors import SimulationFault
from .routing import ProtocolKind, Route, most_frequent_path
from .simulation import RunResult, run_simulation
from .stats import PairwiseTests, StudySummary, SummaryStats, significance_matrix, summarize

logger = logging.getLogger(__name__)


def run_seed(master_seed: int, run_index: int) -> np.random.SeedSequence:
    """Independent, reproducible per-run seed: spawn key (run_index,) off the master."""
    return np.random.SeedSequence(master_seed, spawn_key=(run_index,))


@dataclass(frozen=True)
class FrequentRoute:
    run_index: int
    protocol: ProtocolKind
    route: Route
    frequency: int


@dataclass
class StudyReport:
    config: StudyConfig
    runs: list[RunResult]
    study_summary: StudySummary
    ttests: PairwiseTests | None
    decision_raw: DecisionTable
    decision_corrected: DecisionTable
    ranking: list[ProtocolKind]
    frequent_routes: list[FrequentRoute]
    provenance: dict[str, str]


def _study_summary(config: StudyConfig, runs: list[RunResult]) -> StudySummary:
    pe: dict[ProtocolKind, SummaryStats] = {}
    tt: dict[ProtocolKind, SummaryStats] = {}
    for p in ProtocolKind:
        pe_values = [run.summaries[p].percent_error for run in runs]
        tt_values = [run.summaries[p].time_mean_hr for run in runs]
        if config.run_count >= 2:
            pe[p] = summarize(pe_values)
            tt[p] = summarize(tt_values)
        else:
            # Single run: the mean is the value itself, spread is undefined.
            pe[p] = SummaryStats(mean=pe_values[0], std=math.nan, n=1)
            tt[p] = SummaryStats(mean=tt_values[0], std=math.nan, n=1)
    return StudySummary(percent_error=pe, transmission_time=tt)


def run_study(config: StudyConfig) -> StudyReport:
    """Execute the full trade study described by config.

    Runs execute in order with independent derived seeds, then everything
    downstream (summary stats, pairwise tests, decision tables, frequent
    routes) is computed from the collected run data.
    """
    config.validate()
    runs: list[RunResult] = []
    for i in range(config.run_count):
        rng = np.random.default_rng(run_seed(config.seed, i))
        try:
            runs.append(run_simulation(config, rng))
        except SimulationFault as exc:
            raise SimulationFault(f"run {i}: {exc}") from exc
        logger.info("run %d of %d complete", i + 1, config.run_count)

    study_summary = _study_summary(config, runs)

    if config.run_count >= 2:
        ttests = significance_matrix(study_summary)
    else:
        logger.warning("run_count < 2: skipping significance tests")
        ttests = None

    pe_means = {p: study_summary.percent_error[p].mean for p in ProtocolKind}
    tt_means = {p: study_summary.transmission_time[p].mean for p in ProtocolKind}
    decision_raw = build_table(pe_means, tt_means)
    decision_corrected = practicality_correction(decision_raw, config.baseline)
    ranking = rank(decision_corrected)

    frequent_routes = []
    for i, run in enumerate(runs):
        for p in ProtocolKind:
            routes = [r.route for r in run.records if r.protocol is p]
            best = most_frequent_path(routes)
            frequent_routes.append(
                FrequentRoute(
                    run_index=i,
                    protocol=p,
                    route=best,
                    frequency=sum(1 for r in routes if r == best),
                )
            )

    provenance = {
        "tool_version": __version__,
        "seed": str(config.seed),
        "config_hash": config_hash(config),
    }
    return StudyReport(
        config=config,
        runs=runs,
        study_summary=study_summary,
        ttests=ttests,
        decision_raw=decision_raw,
        decision_corrected=decision_corrected,
        ranking=ranking,
        frequent_routes=frequent_routes,
        provenance=provenance,
    )
