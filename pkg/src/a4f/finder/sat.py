"""Tseitin clausification and a deterministic DPLL SAT search.

The search branches on the lowest-numbered unassigned decision variable
and always tries false before true, so satisfying assignments are found
in lexicographic order over the decision (bounds) variables.  Auxiliary
Tseitin variables are never decided: the full gate encoding forces them
by unit propagation once their inputs are assigned.

No clause learning, no heuristics, no randomness: the outcome depends
only on the clause set and the budget.
"""

from __future__ import annotations

from typing import Optional

from .budget import Budget
from .circuit import AND, CONST, NOT, OR, VAR, Circuit


def tseitin(circuit: Circuit, root: int, n_bounds: int,
            budget: Budget) -> Optional[tuple[list[list[int]], int]]:
    """CNF for ``root``; returns (clauses, n_vars) or None when trivially unsat."""
    if root == circuit.FALSE:
        return None
    if root == circuit.TRUE:
        return [], n_bounds

    ops, args = circuit.ops, circuit.args
    lit_of: dict[int, int] = {}
    clauses: list[list[int]] = []
    next_var = n_bounds + 1

    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if node in lit_of:
            continue
        op = ops[node]
        if op == VAR:
            lit_of[node] = args[node]
            continue
        if op == CONST:
            raise AssertionError("constant node inside a folded circuit")
        if op == NOT:
            child = args[node]
            if child in lit_of:
                lit_of[node] = -lit_of[child]
            else:
                stack.append((node, True))
                stack.append((child, False))
            continue
        if not expanded:
            stack.append((node, True))
            for ch in args[node]:
                if ch not in lit_of:
                    stack.append((ch, False))
            continue
        budget.tick()
        kids = [lit_of[ch] for ch in args[node]]
        g = next_var
        next_var += 1
        lit_of[node] = g
        if op == AND:
            for k in kids:
                clauses.append([-g, k])
            clauses.append([g] + [-k for k in kids])
        else:  # OR
            for k in kids:
                clauses.append([g, -k])
            clauses.append([-g] + kids)

    clauses.append([lit_of[root]])
    return clauses, next_var - 1


_UNSET = -1
_FALSE = 0
_TRUE = 1


class DPLL:
    """One-shot solver instance; build a fresh one per (re-)solve."""

    def __init__(self, n_vars: int, n_decision: int, clauses: list[list[int]],
                 budget: Budget):
        self.n_vars = n_vars
        self.n_decision = n_decision
        self.budget = budget
        self.assign = [_UNSET] * (n_vars + 1)
        self.trail: list[int] = []
        self.qhead = 0
        self.levels: list[list] = []          # [trail_mark, var, tried_true]
        self.watch: dict[int, list[int]] = {}
        self.clauses: list[list[int]] = []
        self.root_units: list[int] = []
        self.conflict_at_root = False
        for cl in clauses:
            self._install(list(cl))

    def _install(self, cl: list[int]):
        if not cl:
            self.conflict_at_root = True
            return
        if len(cl) == 1:
            self.root_units.append(cl[0])
            return
        ci = len(self.clauses)
        self.clauses.append(cl)
        self.watch.setdefault(cl[0], []).append(ci)
        self.watch.setdefault(cl[1], []).append(ci)

    def _value(self, lit: int) -> int:
        v = self.assign[abs(lit)]
        if v == _UNSET:
            return _UNSET
        return v if lit > 0 else 1 - v

    def _enqueue(self, lit: int) -> bool:
        val = self._value(lit)
        if val == _TRUE:
            return True
        if val == _FALSE:
            return False
        self.assign[abs(lit)] = _TRUE if lit > 0 else _FALSE
        self.trail.append(lit)
        return True

    def _propagate(self) -> bool:
        while self.qhead < len(self.trail):
            self.budget.tick()
            lit = self.trail[self.qhead]
            self.qhead += 1
            falsified = -lit
            ws = self.watch.get(falsified)
            if not ws:
                continue
            i = 0
            while i < len(ws):
                ci = ws[i]
                cl = self.clauses[ci]
                if cl[0] == falsified:
                    cl[0], cl[1] = cl[1], cl[0]
                # cl[1] is the falsified watch
                first_val = self._value(cl[0])
                if first_val == _TRUE:
                    i += 1
                    continue
                moved = False
                for k in range(2, len(cl)):
                    if self._value(cl[k]) != _FALSE:
                        cl[1], cl[k] = cl[k], cl[1]
                        self.watch.setdefault(cl[1], []).append(ci)
                        ws[i] = ws[-1]
                        ws.pop()
                        moved = True
                        break
                if moved:
                    continue
                if first_val == _FALSE:
                    return False
                if not self._enqueue(cl[0]):
                    return False
                i += 1
        return True

    def _undo_to(self, mark: int):
        for k in range(len(self.trail) - 1, mark - 1, -1):
            self.assign[abs(self.trail[k])] = _UNSET
        del self.trail[mark:]
        self.qhead = mark

    def _next_decision(self) -> Optional[int]:
        for v in range(1, self.n_decision + 1):
            if self.assign[v] == _UNSET:
                return v
        return None

    def solve(self) -> Optional[list[bool]]:
        """Deterministic search; None when unsatisfiable.

        Raises BudgetExceeded when the budget runs out.
        """
        if self.conflict_at_root:
            return None
        for u in self.root_units:
            if not self._enqueue(u):
                return None
        if not self._propagate():
            return None
        while True:
            v = self._next_decision()
            if v is None:
                return [self.assign[k] == _TRUE
                        for k in range(1, self.n_decision + 1)]
            self.levels.append([len(self.trail), v, False])
            self._enqueue(-v)    # try false first
            while not self._propagate():
                self.budget.tick()
                while self.levels and self.levels[-1][2]:
                    mark, _, _ = self.levels.pop()
                    self._undo_to(mark)
                if not self.levels:
                    return None
                lvl = self.levels[-1]
                self._undo_to(lvl[0])
                lvl[2] = True
                self._enqueue(lvl[1])
