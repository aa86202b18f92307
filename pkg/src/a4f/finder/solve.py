"""Solve and enumerate drivers tying bounds, translation, and SAT together.

Enumeration is deterministic and indexable: after each solution a blocking
clause over all bounds variables is added and the search re-runs, so the
k-th instance is a pure function of (model, command, scope, k).  Clients
can therefore implement previous/next navigation by index alone, with no
server-side session state.
"""

from __future__ import annotations

from typing import Iterator, Optional

from ..errors import A4FError, BudgetExceeded, ScopeTooLargeError
from ..lang.resolver import ResolvedModel
from .bounds import DEFAULT_MAX_SCOPE, Bounds, compute_bounds
from .budget import Budget
from .circuit import Circuit
from .instance import Instance, SolveOutcome
from .iso import canonical_key
from .sat import DPLL, tseitin
from .translate import translate


def decode_instance(model: ResolvedModel, bounds: Bounds,
                    assignment: list[bool]) -> Instance:
    """Instance from a bounds-variable assignment (1-based var ids)."""

    def val(var: Optional[int]) -> bool:
        return True if var is None else assignment[var - 1]

    sigs: dict[str, list[str]] = {}
    universe: list[str] = []
    for s in bounds.top_order:
        _, exactly = bounds.sig_bound[s]
        atoms = []
        for i, a in enumerate(bounds.atoms[s]):
            on = True if exactly else val(bounds.presence_var[(s, i)])
            if on:
                atoms.append(a)
        sigs[s] = atoms
        universe.extend(atoms)
    for s in bounds.sub_order:
        root = model.root_of(s)
        sigs[s] = [a for a in bounds.atoms[root]
                   if val(bounds.membership_var[(s, a)])]
    fields: dict[str, list[tuple[str, ...]]] = {}
    for fname, tuples in bounds.field_tuples.items():
        fields[fname] = [t for t in tuples
                         if val(bounds.tuple_var[(fname, t)])]
    return Instance.build(sigs, fields, universe)


def blocking_clause(bounds: Bounds, assignment: list[bool]) -> list[int]:
    """Clause excluding exactly this assignment of the bounds variables."""
    return [-(v + 1) if assignment[v] else (v + 1)
            for v in range(bounds.n_vars)]


def _solution_stream(model: ResolvedModel, command_name: str, budget: Budget,
                     max_scope: int, iso_filter: bool) -> Iterator[Instance]:
    """Instances in deterministic solver order via blocking and re-solving.

    Raises BudgetExceeded / ScopeTooLargeError; exhausts at unsat.
    """
    cmd = model.commands[command_name]
    bounds = compute_bounds(model, cmd.scope, max_scope=max_scope)
    circuit = Circuit()
    root = translate(model, command_name, bounds, circuit, budget)
    cnf = tseitin(circuit, root, bounds.n_vars, budget)
    if cnf is None:
        return
    clauses, n_vars = cnf
    seen_keys: set = set()
    while True:
        solver = DPLL(n_vars, bounds.n_vars, [list(c) for c in clauses], budget)
        assignment = solver.solve()
        if assignment is None:
            return
        inst = decode_instance(model, bounds, assignment)
        # an empty blocking clause (zero bounds vars) correctly ends the stream
        clauses.append(blocking_clause(bounds, assignment))
        if iso_filter:
            key = canonical_key(inst, bounds)
            if key in seen_keys:
                continue
            seen_keys.add(key)
        yield inst


def solve_command(model: ResolvedModel, command_name: str, *,
                  skip: int = 0,
                  budget: Optional[Budget] = None,
                  max_scope: int = DEFAULT_MAX_SCOPE,
                  iso_filter: bool = False) -> SolveOutcome:
    """Run one command and return the (skip+1)-th instance in solver order."""
    budget = budget or Budget()
    try:
        k = 0
        for inst in _solution_stream(model, command_name, budget, max_scope,
                                     iso_filter):
            if k == skip:
                return SolveOutcome("sat", instance=inst)
            k += 1
        return SolveOutcome("unsat")
    except BudgetExceeded as e:
        return SolveOutcome("limit", message=str(e))
    except ScopeTooLargeError as e:
        return SolveOutcome("error", message=e.message)
    except A4FError as e:
        return SolveOutcome("error", message=str(e))


def enumerate_instances(model: ResolvedModel, command_name: str, *,
                        budget: Optional[Budget] = None,
                        max_scope: int = DEFAULT_MAX_SCOPE,
                        iso_filter: bool = False,
                        limit: Optional[int] = None) -> list[Instance]:
    """All instances in enumeration order (bounded by ``limit`` if given).

    Unlike solve_command this propagates budget/scope errors to the caller.
    """
    budget = budget or Budget()
    out: list[Instance] = []
    for inst in _solution_stream(model, command_name, budget, max_scope,
                                 iso_filter):
        out.append(inst)
        if limit is not None and len(out) >= limit:
            break
    return out
