"""Bounded model finding: bounds, translation, SAT solving, oracle."""

from .bounds import DEFAULT_MAX_SCOPE, HARD_MAX_SCOPE, Bounds, compute_bounds
from .budget import DEFAULT_MAX_STEPS, DEFAULT_TIMEOUT_MS, Budget
from .circuit import Circuit
from .evaluate import eval_expr, eval_formula
from .instance import Instance, SolveOutcome
from .iso import canonical_key, filter_isomorphic
from .oracle import ORACLE_VAR_CAP, OracleResult, brute_force_oracle
from .solve import decode_instance, enumerate_instances, solve_command
from .translate import Translator, translate

__all__ = [
    "Bounds", "compute_bounds", "DEFAULT_MAX_SCOPE", "HARD_MAX_SCOPE",
    "Budget", "DEFAULT_TIMEOUT_MS", "DEFAULT_MAX_STEPS",
    "Circuit", "translate", "Translator",
    "Instance", "SolveOutcome",
    "solve_command", "enumerate_instances", "decode_instance",
    "eval_formula", "eval_expr",
    "brute_force_oracle", "OracleResult", "ORACLE_VAR_CAP",
    "canonical_key", "filter_isomorphic",
]
