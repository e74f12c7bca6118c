"""Binary artificial bee colony variants (ibinabc, binabc, disabc, abcbin) for UFLP benchmarking."""

from ibinabc.core import RngStream, fitness, roulette_select, selection_probabilities
from ibinabc.engine import EngineConfig, RunResult, run
from ibinabc.estimator import BinaryABC
from ibinabc.exceptions import ConfigurationError, DomainError, InvalidInputError, ParseError
from ibinabc.problems import OneMax, UflpInstance, UflpProblem, evaluate_uflp, load_instance, parse_orlib

__version__ = "0.1.0"

__all__ = [
    "BinaryABC",
    "ConfigurationError",
    "DomainError",
    "EngineConfig",
    "InvalidInputError",
    "OneMax",
    "ParseError",
    "RngStream",
    "RunResult",
    "UflpInstance",
    "UflpProblem",
    "evaluate_uflp",
    "fitness",
    "load_instance",
    "parse_orlib",
    "roulette_select",
    "run",
    "selection_probabilities",
]
