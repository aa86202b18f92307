"""Hash-consed boolean circuit DAG over bounds variables.

Nodes are integers indexing into the builder's node table.  Commutative
gates sort and deduplicate their children, constants fold away, and a
complementary child pair collapses the gate, so identical subcircuits
produced by quantifier expansion share structure.
"""

from __future__ import annotations

from typing import Iterable

VAR = "v"
AND = "&"
OR = "|"
NOT = "!"
CONST = "c"


class Circuit:
    def __init__(self):
        self.ops: list[str] = []
        self.args: list = []
        self._memo: dict = {}
        self._neg: dict[int, int] = {}
        self.FALSE = self._mk(CONST, False)
        self.TRUE = self._mk(CONST, True)

    def __len__(self) -> int:
        return len(self.ops)

    def _mk(self, op: str, arg) -> int:
        key = (op, arg)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self.ops.append(op)
        self.args.append(arg)
        idx = len(self.ops) - 1
        self._memo[key] = idx
        return idx

    def var(self, var_id: int) -> int:
        return self._mk(VAR, var_id)

    def const(self, value: bool) -> int:
        return self.TRUE if value else self.FALSE

    def not_(self, x: int) -> int:
        if x == self.TRUE:
            return self.FALSE
        if x == self.FALSE:
            return self.TRUE
        if self.ops[x] == NOT:
            return self.args[x]
        hit = self._neg.get(x)
        if hit is not None:
            return hit
        n = self._mk(NOT, x)
        self._neg[x] = n
        self._neg[n] = x
        return n

    def and_(self, xs: Iterable[int]) -> int:
        kids = []
        seen = set()
        for x in xs:
            if x == self.FALSE:
                return self.FALSE
            if x == self.TRUE or x in seen:
                continue
            seen.add(x)
            kids.append(x)
        for x in kids:
            if self._neg.get(x) in seen:
                return self.FALSE
        if not kids:
            return self.TRUE
        if len(kids) == 1:
            return kids[0]
        kids.sort()
        return self._mk(AND, tuple(kids))

    def or_(self, xs: Iterable[int]) -> int:
        kids = []
        seen = set()
        for x in xs:
            if x == self.TRUE:
                return self.TRUE
            if x == self.FALSE or x in seen:
                continue
            seen.add(x)
            kids.append(x)
        for x in kids:
            if self._neg.get(x) in seen:
                return self.TRUE
        if not kids:
            return self.FALSE
        if len(kids) == 1:
            return kids[0]
        kids.sort()
        return self._mk(OR, tuple(kids))

    def implies(self, a: int, b: int) -> int:
        return self.or_([self.not_(a), b])

    def iff(self, a: int, b: int) -> int:
        return self.and_([self.implies(a, b), self.implies(b, a)])

    def at_most_one(self, xs: list[int]) -> int:
        terms = []
        for i in range(len(xs)):
            for j in range(i + 1, len(xs)):
                terms.append(self.not_(self.and_([xs[i], xs[j]])))
        return self.and_(terms)

    def exactly_one(self, xs: list[int]) -> int:
        return self.and_([self.or_(xs), self.at_most_one(xs)])

    def mult_constraint(self, kind: str, xs: list[int]) -> int:
        """Circuit for a one/lone/some/set multiplicity over member literals."""
        if kind == "one":
            return self.exactly_one(xs)
        if kind == "lone":
            return self.at_most_one(xs)
        if kind == "some":
            return self.or_(xs)
        return self.TRUE
