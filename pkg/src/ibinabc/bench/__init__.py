from ibinabc.bench.experiment import (
    ExperimentResult,
    ExperimentSpec,
    RunRecord,
    SummaryRow,
    VariantSpec,
    run_experiment,
    tuning_sweep,
    write_result,
)
from ibinabc.bench.stats import Summary, gap, summarize

__all__ = [
    "ExperimentResult",
    "ExperimentSpec",
    "RunRecord",
    "Summary",
    "SummaryRow",
    "VariantSpec",
    "gap",
    "run_experiment",
    "summarize",
    "tuning_sweep",
    "write_result",
]
