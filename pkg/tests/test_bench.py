import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_uflp
from ibinabc.bench import reference
from ibinabc.bench.cli import comparison_report, main
from ibinabc.bench.experiment import (
    SUMMARY_COLUMNS,
    TRACE_COLUMNS,
    ExperimentSpec,
    VariantSpec,
    run_experiment,
    summary_row,
    sweep_variants,
    write_result,
)
from ibinabc.bench.stats import gap, summarize
from ibinabc.exceptions import ConfigurationError, InvalidInputError
from ibinabc.problems import UflpInstance, format_orlib


def test_gap_examples():
    assert gap(5.0, 5.0) == 0.0
    assert round(gap(17157257.31, 17156454.48), 5) == 0.00468
    assert round(gap(17157257.31, 17156454.48), 3) == 0.005
    assert round(gap(12988144.53, 12979071.58), 3) == 0.070


def test_gap_rejects_non_positive_optimum():
    with pytest.raises(InvalidInputError):
        gap(1.0, 0.0)


def test_summarize_examples():
    s = summarize([2.0, 4.0], optimum=2.0, repetitions=2)
    assert (s.mean, s.std, s.best, s.worst, s.hit, s.gap) == (3.0, 1.0, 2.0, 4.0, 1, 50.0)
    one = summarize([7.0], optimum=7.0, repetitions=1)
    assert one.hit == 1 and one.std == 0
    opt = 17156454.48
    full = summarize([opt] * 30, optimum=opt, repetitions=30)
    assert (full.std, full.gap, full.hit) == (0.0, 0.0, 30)


def test_summarize_without_optimum():
    s = summarize([1.0, 3.0])
    assert s.gap is None and s.hit is None


def test_summarize_length_mismatch():
    with pytest.raises(InvalidInputError):
        summarize([1.0], repetitions=2)


@given(st.lists(st.floats(0, 1e8), min_size=1, max_size=40), st.floats(1, 1e8))
def test_summary_ordering(costs, opt):
    s = summarize(costs, opt, len(costs))
    assert s.best <= s.mean <= s.worst
    assert s.std >= 0 and 0 <= s.hit <= len(costs)
    if s.hit == len(costs):
        assert s.gap == 0 and s.std == 0


def test_published_reference_values():
    assert reference.published("ibinabc", "capb") == {"gap": 0.070, "std": 23762.929, "hit": 24}
    assert reference.published("disabc", "capa") == {"gap": 0.15, "std": 74782.61}
    assert reference.published("binaaa", "capc")["hit"] == 1
    assert reference.published("ibinabc", "nope") is None
    for table in (reference.ABC_VARIANTS, reference.OTHER_METHODS):
        assert all(len(rows) == 15 for rows in table.values())


@pytest.fixture()
def tiny_instances(tmp_path):
    paths = []
    for k, (m, n) in enumerate([(6, 8), (8, 5)]):
        p = tmp_path / f"syn{k}.txt"
        p.write_text(format_orlib(make_uflp(k, m, n)))
        paths.append(str(p))
    return paths


def _spec(paths, **kw):
    base = dict(instances=paths, variants=[VariantSpec("ibinabc"), VariantSpec("binabc")],
                repetitions=3, budget=300, base_seed=5)
    base.update(kw)
    return ExperimentSpec(**base)


def test_run_experiment_rows_and_seeds(tiny_instances):
    res = run_experiment(_spec(tiny_instances))
    assert len(res.rows) == 4 and len(res.runs) == 12
    assert [r.seed for r in res.runs[:3]] == [5, 6, 7]
    for row in res.rows:
        assert row.best <= row.mean <= row.worst
        assert row.runs == 3 and row.budget == 300
    assert res.rows[0].q_start == 0.3 and res.rows[1].q_start is None


def test_rows_are_a_fold_over_run_records(tiny_instances):
    spec = _spec(tiny_instances)
    res = run_experiment(spec)
    for c, row in enumerate(res.rows):
        chunk = res.runs[c * 3:(c + 1) * 3]
        inst = UflpInstance(row.instance, [1.0], [[0.0]])
        again = summary_row(inst, spec.variants[c % 2], spec.budget, chunk)
        assert (again.mean, again.std, again.best, again.worst) == (row.mean, row.std, row.best, row.worst)


def test_parallel_matches_serial(tiny_instances):
    a = run_experiment(_spec(tiny_instances))
    b = run_experiment(_spec(tiny_instances, workers=2))
    assert a.rows == b.rows


def test_experiment_validation(tiny_instances):
    with pytest.raises(ConfigurationError):
        run_experiment(_spec(tiny_instances, variants=[]))
    with pytest.raises(ConfigurationError):
        run_experiment(_spec([]))
    with pytest.raises(ConfigurationError):
        run_experiment(_spec(tiny_instances, repetitions=0))
    with pytest.raises(ConfigurationError):
        run_experiment(_spec(tiny_instances, variants=[VariantSpec("bogus")]))
    with pytest.raises(FileNotFoundError):
        run_experiment(_spec(tiny_instances + ["no_such_instance"]))
    with pytest.raises(ConfigurationError):
        run_experiment(_spec(tiny_instances, variants=[VariantSpec("ibinabc", q_start=0.1, q_end=0.4)]))


def test_sweep_grid_shape():
    cells = sweep_variants()
    assert len(cells) == 24
    combos = {(c.n_sources, c.q_start, c.q_end, c.limit_mult) for c in cells}
    assert len(combos) == 24
    assert {c.limit_mult for c in cells} == {0.5, 1.0, 2.0, 4.0}


def test_written_outputs(tiny_instances, tmp_path):
    spec = _spec(tiny_instances, trace=True)
    res = run_experiment(spec)
    out = tmp_path / "out" / "summary.csv"
    paths = write_result(res, out, "csv", trace=True)
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert tuple(rows[0]) == SUMMARY_COLUMNS
    assert len(rows) == 5
    traces = [p for p in paths if "_trace_" in p.name]
    assert len(traces) == 4
    header = traces[0].read_text().splitlines()[0]
    assert tuple(header.split(",")) == TRACE_COLUMNS
    runs = (tmp_path / "out" / "summary_runs.csv").read_text().splitlines()
    assert len(runs) == 13

    jpath = tmp_path / "summary.json"
    write_result(res, jpath, "json")
    doc = json.loads(jpath.read_text())
    assert len(doc["summary"]) == 4 and len(doc["runs"]) == 12


def test_comparison_report_includes_published():
    inst = make_uflp(0, 4, 4, name="capa")
    res = run_experiment(ExperimentSpec([inst], [VariantSpec("ibinabc")], repetitions=2, budget=100))
    text = comparison_report(res.rows)
    assert "capa" in text and "[0.00 / 0.00]" in text


def test_cli_run_writes_files(tiny_instances, tmp_path):
    out = tmp_path / "r.csv"
    code = main(["run", "--instances", tiny_instances[0], "--variant", "ibinabc", "--n", "6",
                 "--budget", "200", "--runs", "2", "--trace", "--out", str(out)])
    assert code == 0
    assert out.exists() and (tmp_path / "r_runs.csv").exists()
    assert list(tmp_path.glob("r_trace_*.csv"))


def test_cli_stdout_and_compare(tiny_instances, capsys):
    assert main(["compare", "--instances", *tiny_instances, "--variants", "ibinabc,disabc",
                 "--budget", "150", "--runs", "2"]) == 0
    outtxt = capsys.readouterr().out
    assert outtxt.startswith(",".join(SUMMARY_COLUMNS))
    assert "published gap/std" in outtxt


def test_cli_validation_errors(tiny_instances, capsys):
    assert main(["run", "--instances", "missing_thing", "--budget", "100", "--runs", "1"]) == 1
    assert main(["run", "--instances", tiny_instances[0], "--variant", "nope"]) == 1
    assert main(["run", "--instances", tiny_instances[0], "--runs", "0"]) == 1
    assert main(["run", "--instances", tiny_instances[0], "--trace"]) == 1
    assert main(["run", "--instances", tiny_instances[0], "--n", "50", "--budget", "10"]) == 1
    assert "error" in capsys.readouterr().err


def test_cli_bad_flags_exit_one(tiny_instances):
    with pytest.raises(SystemExit) as info:
        main(["run", "--instances", tiny_instances[0], "--theta-mode", "bogus"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["explode"])
    assert info.value.code == 1


def test_cli_unwritable_output_is_runtime_failure(tiny_instances, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    out = blocker / "sub" / "r.csv"
    assert main(["run", "--instances", tiny_instances[0], "--runs", "1", "--budget", "50",
                 "--out", str(out)]) == 2


def test_cli_runtime_failure(tiny_instances, monkeypatch):
    import ibinabc.bench.cli as cli

    def boom(spec):
        raise RuntimeError("disk on fire")

    monkeypatch.setattr(cli, "run_experiment", boom)
    assert main(["run", "--instances", tiny_instances[0], "--runs", "1", "--budget", "50"]) == 2


def test_module_entry_point(tiny_instances):
    proc = subprocess.run(
        [sys.executable, "-m", "ibinabc.bench", "sweep", "--instance", tiny_instances[0],
         "--budget", "60", "--runs", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    rows = list(csv.reader(io.StringIO(proc.stdout)))
    assert len(rows) == 25
    assert np.all([len(r) == len(SUMMARY_COLUMNS) for r in rows])
