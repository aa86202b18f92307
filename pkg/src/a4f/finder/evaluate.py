"""Direct set-theoretic evaluation of formulas and expressions on an instance.

This is the ground-truth semantics: relations are tuple sets, join is
relational composition, closure is the least transitive superset, and
quantifiers iterate over the atom lists of the instance.  It shares no
code with the circuit translation, which makes it usable as an
independent oracle for the solver.
"""

from __future__ import annotations

from ..errors import ResolveError
from ..lang import ast
from .instance import Instance

TupleSet = frozenset


def eval_expr(e: ast.ExprNode, inst: Instance, env: dict[str, str]) -> TupleSet:
    if isinstance(e, ast.NameExpr):
        if e.ref == "sig":
            return inst.sig_set(e.name)
        return inst.field_set(e.name)
    if isinstance(e, ast.VarExpr):
        return frozenset({(env[e.name],)})
    if isinstance(e, ast.UnivExpr):
        return inst.universe_set()
    if isinstance(e, ast.IdenExpr):
        return frozenset((a, a) for a in inst.universe)
    if isinstance(e, ast.NoneExpr):
        return frozenset()
    if isinstance(e, ast.UnaryExpr):
        m = eval_expr(e.e, inst, env)
        if e.op == "~":
            return frozenset(t[::-1] for t in m)
        if e.op == "^":
            return _closure(m)
        if e.op == "*":
            return _closure(m) | frozenset((a, a) for a in inst.universe)
    if isinstance(e, ast.BinExpr):
        l = eval_expr(e.l, inst, env)
        r = eval_expr(e.r, inst, env)
        if e.op == "+":
            return l | r
        if e.op == "-":
            return l - r
        if e.op == "&":
            return l & r
        if e.op == "->":
            return frozenset(a + b for a in l for b in r)
        if e.op == ".":
            return _join(l, r)
    raise ResolveError(f"cannot evaluate expression {type(e).__name__}")


def _join(l: TupleSet, r: TupleSet) -> TupleSet:
    by_first: dict[str, list[tuple]] = {}
    for t in r:
        by_first.setdefault(t[0], []).append(t[1:])
    out = set()
    for t in l:
        for rest in by_first.get(t[-1], ()):
            out.add(t[:-1] + rest)
    return frozenset(out)


def _closure(r: TupleSet) -> TupleSet:
    cur = r
    while True:
        nxt = cur | _join(cur, cur)
        if nxt == cur:
            return cur
        cur = nxt


def eval_formula(f: ast.FormulaNode, inst: Instance, env: dict[str, str]) -> bool:
    if isinstance(f, ast.ConstFormula):
        return f.value
    if isinstance(f, ast.BinFormula):
        if f.op == "and":
            return eval_formula(f.l, inst, env) and eval_formula(f.r, inst, env)
        if f.op == "or":
            return eval_formula(f.l, inst, env) or eval_formula(f.r, inst, env)
        if f.op == "implies":
            return (not eval_formula(f.l, inst, env)) or eval_formula(f.r, inst, env)
        return eval_formula(f.l, inst, env) == eval_formula(f.r, inst, env)
    if isinstance(f, ast.NotFormula):
        return not eval_formula(f.f, inst, env)
    if isinstance(f, ast.Compare):
        l = eval_expr(f.l, inst, env)
        r = eval_expr(f.r, inst, env)
        if f.op == "in":
            return l <= r
        if f.op == "notin":
            return not (l <= r)
        if f.op == "eq":
            return l == r
        return l != r
    if isinstance(f, ast.MultFormula):
        n = len(eval_expr(f.e, inst, env))
        if f.kind == "some":
            return n > 0
        if f.kind == "no":
            return n == 0
        if f.kind == "lone":
            return n <= 1
        return n == 1
    if isinstance(f, ast.Quant):
        count = 0
        for env2 in _bindings(f.decls, 0, inst, env):
            holds = eval_formula(f.body, inst, env2)
            if f.kind == "all" and not holds:
                return False
            if f.kind == "some" and holds:
                return True
            if f.kind == "no" and holds:
                return False
            if holds:
                count += 1
                if f.kind == "lone" and count > 1:
                    return False
        if f.kind == "all":
            return True
        if f.kind == "some":
            return False
        if f.kind == "no":
            return True
        if f.kind == "lone":
            return True
        return count == 1
    raise ResolveError(f"cannot evaluate formula {type(f).__name__}")


def _bindings(decls, i, inst: Instance, env: dict[str, str]):
    if i == len(decls):
        yield env
        return
    var, dexpr = decls[i]
    dom = eval_expr(dexpr, inst, env)
    for (atom,) in sorted(dom):
        env2 = dict(env)
        env2[var] = atom
        yield from _bindings(decls, i + 1, inst, env2)
