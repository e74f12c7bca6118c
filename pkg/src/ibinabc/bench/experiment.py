"""Repeated seeded runs over (instance, variant) cells and their aggregation."""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from pathlib import Path

from ibinabc.bench.stats import summarize
from ibinabc.engine import VARIANTS, EngineConfig, run
from ibinabc.exceptions import ConfigurationError
from ibinabc.problems import UflpInstance, load_instance

log = logging.getLogger(__name__)

SUMMARY_COLUMNS = (
    "instance", "variant", "N", "limit", "q_start", "q_end", "alpha",
    "budget", "runs", "mean", "std", "best", "worst", "gap", "hit",
)
RUN_COLUMNS = ("instance", "variant", "run_index", "seed", "best_cost", "evals", "hit")
TRACE_COLUMNS = ("run_index", "seed", "evals", "best_cost")

SWEEP_N = (20, 40)
SWEEP_Q = ((0.5, 0.3), (0.5, 0.1), (0.3, 0.1))
SWEEP_LIMIT_MULT = (0.5, 1.0, 2.0, 4.0)


@dataclass(frozen=True)
class VariantSpec:
    """A variant name plus overrides; unset fields take the variant defaults."""

    name: str
    n_sources: int | None = None
    limit_mult: float | None = None
    q_start: float | None = None
    q_end: float | None = None
    alpha: int | None = None
    theta_mode: str | None = None
    label: str | None = None

    def config(self, dimension: int, budget: int, seed: int) -> EngineConfig:
        overrides = {k: v for k, v in asdict(self).items() if k not in ("name", "label")}
        return EngineConfig.for_variant(self.name, dimension, budget=budget, seed=seed, **overrides)

    @property
    def tag(self) -> str:
        return self.label or self.name


@dataclass
class ExperimentSpec:
    instances: list
    variants: list[VariantSpec]
    repetitions: int = 30
    base_seed: int = 0
    budget: int = 80_000
    trace: bool = False
    workers: int = 1
    data_dir: str | None = None

    def validate(self) -> None:
        if not self.instances:
            raise ConfigurationError("instance list is empty")
        if not self.variants:
            raise ConfigurationError("variant list is empty")
        if self.repetitions < 1:
            raise ConfigurationError("repetitions must be at least 1")
        if self.workers < 1:
            raise ConfigurationError("workers must be at least 1")
        for v in self.variants:
            if v.name not in VARIANTS:
                raise ConfigurationError(f"unknown variant {v.name!r}; choose from {', '.join(VARIANTS)}")


@dataclass
class SummaryRow:
    instance: str
    variant: str
    N: int
    limit: int
    q_start: float | None
    q_end: float | None
    alpha: int | None
    budget: int
    runs: int
    mean: float
    std: float
    best: float
    worst: float
    gap: float | None
    hit: int | None


@dataclass
class RunRecord:
    instance: str
    variant: str
    run_index: int
    seed: int
    best_cost: float
    evals: int
    hit: bool | None
    trace: list = field(default_factory=list, repr=False)


@dataclass
class ExperimentResult:
    rows: list[SummaryRow]
    runs: list[RunRecord]


def _resolve(spec: ExperimentSpec) -> list[UflpInstance]:
    out = []
    for item in spec.instances:
        out.append(item if isinstance(item, UflpInstance) else load_instance(item, spec.data_dir))
    return out


def _one_run(args) -> RunRecord:
    inst, variant, k, seed, budget, keep_trace = args
    res = run(inst, variant.config(inst.m, budget, seed))
    return RunRecord(
        instance=inst.name,
        variant=variant.tag,
        run_index=k,
        seed=seed,
        best_cost=res.best_cost,
        evals=res.evals_used,
        hit=res.hit,
        trace=res.trace if keep_trace else [],
    )


def summary_row(inst: UflpInstance, variant: VariantSpec, budget: int, records: list[RunRecord]) -> SummaryRow:
    """Fold per-run records of one cell into its summary."""
    cfg = variant.config(inst.m, budget, 0)
    s = summarize([r.best_cost for r in records], inst.optimum, len(records))
    ibin = cfg.variant == "ibinabc"
    return SummaryRow(
        instance=inst.name,
        variant=variant.tag,
        N=cfg.n_sources,
        limit=cfg.resolved_limit(inst.m),
        q_start=cfg.q_start if ibin else None,
        q_end=cfg.q_end if ibin else None,
        alpha=cfg.alpha if ibin else None,
        budget=budget,
        runs=s.runs,
        mean=s.mean,
        std=s.std,
        best=s.best,
        worst=s.worst,
        gap=s.gap,
        hit=s.hit,
    )


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    """Run every (instance, variant) cell ``spec.repetitions`` times; run k uses seed ``base_seed + k``.

    Instances and variant configurations are all checked before the first run.
    """
    spec.validate()
    instances = _resolve(spec)
    for inst, v in product(instances, spec.variants):
        v.config(inst.m, spec.budget, spec.base_seed).validate(inst.m)

    cells = list(product(instances, spec.variants))
    jobs = [
        (inst, v, k, spec.base_seed + k, spec.budget, spec.trace)
        for inst, v in cells
        for k in range(spec.repetitions)
    ]
    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            records = list(pool.map(_one_run, jobs, chunksize=1))
    else:
        records = [_one_run(j) for j in jobs]

    rows = []
    for c, (inst, v) in enumerate(cells):
        chunk = records[c * spec.repetitions:(c + 1) * spec.repetitions]
        rows.append(summary_row(inst, v, spec.budget, chunk))
        log.info("%s %s gap=%s hit=%s", inst.name, v.tag, rows[-1].gap, rows[-1].hit)
    return ExperimentResult(rows, records)


def sweep_variants() -> list[VariantSpec]:
    """The 24 ibinabc tuning cells: N x (q_start, q_end) x limit multiplier."""
    cells = []
    for n, (qs, qe), mult in product(SWEEP_N, SWEEP_Q, SWEEP_LIMIT_MULT):
        cells.append(
            VariantSpec("ibinabc", n_sources=n, limit_mult=mult, q_start=qs, q_end=qe,
                        label=f"ibinabc[N={n},q={qs}/{qe},limit={mult}ND]")
        )
    return cells


def tuning_sweep(instance, budget: int = 80_000, repetitions: int = 30, base_seed: int = 0,
                 workers: int = 1, data_dir=None) -> ExperimentResult:
    spec = ExperimentSpec(
        instances=[instance], variants=sweep_variants(), repetitions=repetitions,
        base_seed=base_seed, budget=budget, workers=workers, data_dir=data_dir,
    )
    return run_experiment(spec)


# --- serialization -----------------------------------------------------------

def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return int(v)
    return v


def _csv_text(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r[c]) for c in columns])
    return buf.getvalue()


def summary_csv(rows: list[SummaryRow]) -> str:
    return _csv_text(SUMMARY_COLUMNS, [asdict(r) for r in rows])


def runs_csv(records: list[RunRecord]) -> str:
    return _csv_text(RUN_COLUMNS, [asdict(r) for r in records])


def trace_csv(records: list[RunRecord]) -> str:
    pts = [
        {"run_index": r.run_index, "seed": r.seed, "evals": e, "best_cost": c}
        for r in records
        for e, c in r.trace
    ]
    return _csv_text(TRACE_COLUMNS, pts)


def to_json(result: ExperimentResult) -> str:
    doc = {
        "summary": [asdict(r) for r in result.rows],
        "runs": [{k: getattr(r, k) for k in RUN_COLUMNS} for r in result.runs],
    }
    return json.dumps(doc, indent=2) + "\n"


def _safe(name: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_.=" else "_" for ch in name)


def write_result(result: ExperimentResult, out, fmt: str = "csv", trace: bool = False) -> list[Path]:
    """Write the summary to ``out`` plus sibling per-run and trace files; returns the paths written."""
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt == "json":
        out.write_text(to_json(result))
        written.append(out)
    elif fmt == "csv":
        out.write_text(summary_csv(result.rows))
        runs_path = out.with_name(f"{out.stem}_runs.csv")
        runs_path.write_text(runs_csv(result.runs))
        written += [out, runs_path]
    else:
        raise ConfigurationError(f"unknown output format {fmt!r}")
    if trace:
        groups: dict[tuple[str, str], list[RunRecord]] = {}
        for r in result.runs:
            groups.setdefault((r.instance, r.variant), []).append(r)
        for (inst, var), recs in groups.items():
            p = out.with_name(f"{out.stem}_trace_{_safe(inst)}_{_safe(var)}.csv")
            p.write_text(trace_csv(recs))
            written.append(p)
    return written
