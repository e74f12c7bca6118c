import itertools
import os
from pathlib import Path

import numpy as np
import pytest

from ibinabc.problems import DATA_DIR_ENV, ORLIB_URL, UflpInstance, load_instance

REPO = Path(__file__).resolve().parents[1]


def make_uflp(seed, m, n, setup_scale=7500.0, name="synthetic"):
    """Euclidean instance in the style of the OR-Library cap set.

    Shipment cost is demand times distance, set-up costs are drawn around
    ``setup_scale``.
    """
    rng = np.random.default_rng(seed)
    fac = rng.uniform(0, 100, size=(m, 2))
    cus = rng.uniform(0, 100, size=(n, 2))
    demand = rng.integers(1, 50, size=n)
    dist = np.linalg.norm(fac[:, None, :] - cus[None, :, :], axis=2)
    ship = np.round(dist * demand[None, :], 3)
    setup = np.round(rng.uniform(0.5, 1.5, size=m) * setup_scale, 2)
    return UflpInstance(name=name, setup=setup, ship=ship)


def brute_force_optimum(inst):
    """Exact UFLP optimum by enumerating every non-empty open set (m <= ~18)."""
    m = inst.m
    best, best_mask = np.inf, None
    masks = np.array(list(itertools.product((0, 1), repeat=m))[1:], dtype=bool)
    for chunk in np.array_split(masks, max(1, len(masks) // 4096)):
        ship = np.where(chunk[:, :, None], inst.ship[None, :, :], np.inf).min(axis=1).sum(axis=1)
        cost = chunk @ inst.setup + ship
        k = int(np.argmin(cost))
        if cost[k] < best:
            best, best_mask = float(cost[k]), chunk[k].astype(np.uint8)
    return best, best_mask


@pytest.fixture(scope="session")
def orlib_dir():
    base = Path(os.environ.get(DATA_DIR_ENV, REPO / "data" / "orlib"))
    missing = [n for n in ("cap71",) if not (base / f"{n}.txt").is_file()]
    if missing:
        pytest.fail(
            f"OR-Library cap files not found in {base}. Download cap71.txt ... capc.txt "
            f"from {ORLIB_URL} into that directory or set ${DATA_DIR_ENV}.",
            pytrace=False,
        )
    return base


@pytest.fixture(scope="session")
def orlib(orlib_dir):
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_instance(name, orlib_dir)
        return cache[name]

    return get


# --- acceptance reporting ----------------------------------------------------

_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and rep.when == "call" or (
        item.module.__name__.endswith("test_acceptance") and rep.when == "setup" and rep.failed
    ):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _ACCEPTANCE.append((item.name, doc, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, doc, outcome in _ACCEPTANCE:
        status = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        terminalreporter.write_line(f"{status:5} {doc}")
