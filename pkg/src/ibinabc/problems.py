"""Objective functions the colony can optimize.

The flagship family is the uncapacitated facility location problem (UFLP)
over OR-Library ``cap*`` instances; OneMax is a cheap sanity problem.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ibinabc.core import BIT_DTYPE, check_bits
from ibinabc.exceptions import DomainError, InvalidInputError, ParseError

# Published optimal costs of the 15 OR-Library UFLP instances.
OPTIMA = {
    "cap71": 932615.75,
    "cap72": 977799.40,
    "cap73": 1010641.45,
    "cap74": 1034976.98,
    "cap101": 796648.44,
    "cap102": 854704.20,
    "cap103": 893782.11,
    "cap104": 928941.75,
    "cap131": 793439.56,
    "cap132": 851495.33,
    "cap133": 893076.71,
    "cap134": 928941.75,
    "capa": 17156454.48,
    "capb": 12979071.58,
    "capc": 11505594.33,
}

HIT_TOLERANCE = 1e-2

DATA_DIR_ENV = "IBINABC_DATA_DIR"
ORLIB_URL = "http://people.brunel.ac.uk/~mastjjb/jeb/orlib/uncapinfo.html"


def optima_registry() -> dict[str, float]:
    return dict(OPTIMA)


@dataclass(frozen=True, eq=False)
class UflpInstance:
    name: str
    setup: np.ndarray
    ship: np.ndarray
    optimum: float | None = None

    def __post_init__(self):
        setup = np.asarray(self.setup, dtype=float)
        ship = np.asarray(self.ship, dtype=float)
        if setup.ndim != 1 or ship.ndim != 2 or ship.shape[0] != setup.size:
            raise InvalidInputError(
                f"setup has {setup.size} entries but ship has shape {ship.shape}"
            )
        if not (np.all(np.isfinite(setup)) and np.all(np.isfinite(ship))):
            raise InvalidInputError("costs must be finite")
        if np.any(setup < 0) or np.any(ship < 0):
            raise InvalidInputError("costs must be non-negative")
        setup.flags.writeable = False
        ship.flags.writeable = False
        object.__setattr__(self, "setup", setup)
        object.__setattr__(self, "ship", ship)

    @property
    def m(self) -> int:
        return self.setup.size

    @property
    def n(self) -> int:
        return self.ship.shape[1]

    def __eq__(self, other):
        if not isinstance(other, UflpInstance):
            return NotImplemented
        return (
            self.name == other.name
            and self.optimum == other.optimum
            and np.array_equal(self.setup, other.setup)
            and np.array_equal(self.ship, other.ship)
        )

    __hash__ = None


@dataclass(frozen=True)
class Evaluation:
    cost: float
    assignment: np.ndarray


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        for tok in line.split():
            yield lineno, tok


def parse_orlib(text: str, name: str = "") -> UflpInstance:
    """Parse an OR-Library ``cap`` file.

    Capacities and demands are read and discarded; the capacity slot may hold
    the literal word ``capacity`` as in capa/capb/capc.
    """
    toks = list(_tokens(text))
    pos = 0

    def take(what: str, allow_word: str | None = None) -> float | None:
        nonlocal pos
        if pos >= len(toks):
            last_line = toks[-1][0] if toks else 1
            raise ParseError(f"unexpected end of input while reading {what}", last_line, pos + 1)
        lineno, tok = toks[pos]
        pos += 1
        if allow_word is not None and tok.lower() == allow_word:
            return None
        try:
            return float(tok)
        except ValueError:
            raise ParseError(f"non-numeric {what} {tok!r}", lineno, pos) from None

    if len(toks) < 2:
        raise ParseError("header must contain facility and customer counts", 1)
    header = []
    for _ in range(2):
        lineno, tok = toks[pos]
        pos += 1
        if lineno != toks[0][0] or not tok.isdigit() or int(tok) < 1:
            raise ParseError(f"malformed header token {tok!r}", lineno, pos)
        header.append(int(tok))
    m, n = header

    setup = np.empty(m)
    for i in range(m):
        take("capacity", allow_word="capacity")
        setup[i] = take("fixed cost")

    ship = np.empty((m, n))
    for j in range(n):
        take("demand")
        for i in range(m):
            ship[i, j] = take("shipment cost")

    if pos != len(toks):
        lineno, tok = toks[pos]
        raise ParseError(f"{len(toks) - pos} unexpected trailing token(s) starting {tok!r}", lineno, pos + 1)

    key = name.lower()
    return UflpInstance(name=name, setup=setup, ship=ship, optimum=OPTIMA.get(key))


def format_orlib(inst: UflpInstance, per_line: int = 7) -> str:
    """Serialize ``inst`` in the cap file layout (capacities written as the literal word)."""
    out = [f"{inst.m} {inst.n}"]
    out.extend(f"capacity {c!r}" for c in inst.setup.tolist())
    for j in range(inst.n):
        out.append("0")
        col = inst.ship[:, j].tolist()
        for k in range(0, len(col), per_line):
            out.append(" ".join(repr(v) for v in col[k:k + per_line]))
    return "\n".join(out) + "\n"


def resolve_data_dir(data_dir=None) -> Path:
    if data_dir is not None:
        return Path(data_dir)
    env = os.environ.get(DATA_DIR_ENV)
    if env:
        return Path(env)
    return Path("data") / "orlib"


def load_instance(name_or_path, data_dir=None) -> UflpInstance:
    """Load a cap instance from an explicit path or by registry name."""
    path = Path(name_or_path)
    if not path.is_file():
        key = str(name_or_path).lower()
        if key not in OPTIMA:
            raise FileNotFoundError(f"{name_or_path!r} is neither a file nor a known instance name")
        base = resolve_data_dir(data_dir)
        candidates = [base / f"{key}.txt", base / key, base / f"{key.upper()}.txt"]
        found = [c for c in candidates if c.is_file()]
        if not found:
            raise FileNotFoundError(
                f"instance {key!r} not found under {base} "
                f"(set ${DATA_DIR_ENV} or --data-dir; files from {ORLIB_URL})"
            )
        path = found[0]
    return parse_orlib(path.read_text(), name=path.stem.lower())


def evaluate_uflp(inst: UflpInstance, x) -> Evaluation:
    """Total set-up plus nearest-open-facility shipment cost.

    Ties between equally cheap open facilities go to the lowest index.
    """
    bits = np.asarray(x)
    if bits.size != inst.m:
        raise InvalidInputError(f"expected {inst.m} bits, got {bits.size}")
    open_idx = np.flatnonzero(bits)
    if open_idx.size == 0:
        raise DomainError("no open facility")
    sub = inst.ship[open_idx]
    choice = sub.argmin(axis=0)
    served = sub[choice, np.arange(inst.n)]
    cost = float(inst.setup[open_idx].sum() + served.sum())
    return Evaluation(cost=cost, assignment=open_idx[choice])


def repair_all_closed(inst: UflpInstance, x) -> np.ndarray:
    """Open the single facility that is cheapest to run alone."""
    totals = inst.setup + inst.ship.sum(axis=1)
    fixed = np.zeros(inst.m, dtype=BIT_DTYPE)
    fixed[int(np.argmin(totals))] = 1
    return fixed


def onemax(x) -> float:
    bits = np.asarray(x)
    return float(bits.size - int(bits.sum()))


class Problem:
    """Minimization problem over fixed-length bit vectors."""

    name = "problem"
    optimum: float | None = None
    dimension: int

    def evaluate(self, x) -> float:
        raise NotImplementedError

    def repair(self, x) -> np.ndarray:
        """Map an infeasible vector into the feasible region; identity by default."""
        return x


class OneMax(Problem):
    def __init__(self, dimension: int):
        if dimension < 1:
            raise InvalidInputError("dimension must be at least 1")
        self.dimension = dimension
        self.name = f"onemax{dimension}"
        self.optimum = 0.0

    def evaluate(self, x) -> float:
        return onemax(x)


@dataclass(eq=False)
class UflpProblem(Problem):
    """UFLP objective with a memo of already-costed open sets.

    The memo only saves arithmetic; callers still count every evaluation.
    """

    instance: UflpInstance
    cache_size: int = 200_000
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    @property
    def dimension(self) -> int:
        return self.instance.m

    @property
    def name(self) -> str:
        return self.instance.name

    @property
    def optimum(self) -> float | None:
        return self.instance.optimum

    def evaluate(self, x) -> float:
        bits = np.asarray(x, dtype=BIT_DTYPE)
        key = bits.tobytes()
        cost = self._cache.get(key)
        if cost is None:
            mask = bits.astype(bool)
            if not mask.any():
                raise DomainError("no open facility")
            inst = self.instance
            cost = float(inst.setup[mask].sum() + inst.ship[mask].min(axis=0).sum())
            if len(self._cache) >= self.cache_size:
                self._cache.clear()
            self._cache[key] = cost
        return cost

    def repair(self, x) -> np.ndarray:
        if not np.any(x):
            return repair_all_closed(self.instance, x)
        return x


def as_problem(obj) -> Problem:
    if isinstance(obj, Problem):
        return obj
    if isinstance(obj, UflpInstance):
        return UflpProblem(obj)
    raise InvalidInputError(f"cannot optimize object of type {type(obj).__name__}")


__all__ = [
    "OPTIMA",
    "HIT_TOLERANCE",
    "Evaluation",
    "OneMax",
    "Problem",
    "UflpInstance",
    "UflpProblem",
    "as_problem",
    "check_bits",
    "evaluate_uflp",
    "format_orlib",
    "load_instance",
    "onemax",
    "optima_registry",
    "parse_orlib",
    "repair_all_closed",
]
