"""Name resolution, arity checking, and predicate inlining.

Produces a ResolvedModel whose fact/assert/command formulas are free of
predicate calls (calls are inlined by capture-avoiding substitution) and
whose expression nodes are annotated with arity and referent kind.

Column compatibility is tracked per expression as a pair of root-sig sets
for the end columns; joins and closures over provably disjoint columns are
rejected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from ..errors import (ArityMismatchError, CyclicExtendsError, DuplicateNameError,
                      InvalidScopeError, RecursivePredicateError, ResolveError,
                      UnknownNameError)
from . import ast


@dataclass
class SigInfo:
    name: str
    is_abstract: bool
    mult: str
    parent: Optional[str]
    children: list[str] = field(default_factory=list)
    root: str = ""
    span: Optional[ast.Span] = None


@dataclass
class FieldInfo:
    name: str
    owner: str
    cols: list[str]                       # including the owner column (2 or 3)
    range_mult: Optional[str]
    arrow_mult: Optional[tuple[str, str]]
    span: Optional[ast.Span] = None

    @property
    def arity(self) -> int:
        return len(self.cols)


@dataclass
class PredInfo:
    name: str
    params: list[tuple[str, ast.ExprNode, int]]   # (name, type expr, arity)
    body: ast.FormulaNode                         # resolved, calls inlined
    span: Optional[ast.Span] = None


@dataclass
class ScopeInfo:
    default: int
    overrides: dict[str, tuple[int, bool]]

    def bound(self, sig: str) -> tuple[int, bool]:
        return self.overrides.get(sig, (self.default, False))


@dataclass
class CommandInfo:
    name: str
    kind: str              # "run" | "check"
    secret: bool
    scope: ScopeInfo
    formula: ast.FormulaNode   # run: target body; check: body (negated later)
    span: Optional[ast.Span] = None


@dataclass
class ResolvedModel:
    source: ast.SourceModel
    sigs: dict[str, SigInfo]
    top_sigs: list[str]
    fields: dict[str, FieldInfo]
    facts: list[tuple[str, ast.FormulaNode]]
    preds: dict[str, PredInfo]
    asserts: dict[str, ast.FormulaNode]
    commands: dict[str, CommandInfo]

    def root_of(self, sig: str) -> str:
        return self.sigs[sig].root

    def descendants(self, sig: str) -> list[str]:
        """Proper descendants in declaration order."""
        out = []
        for child in self.sigs[sig].children:
            out.append(child)
            out.extend(self.descendants(child))
        return out


# (arity, left-column roots, right-column roots); unary exprs use the same
# set on both ends.
_Type = tuple[int, frozenset, frozenset]


class _Resolver:
    def __init__(self, model: ast.SourceModel):
        self.model = model
        self.sigs: dict[str, SigInfo] = {}
        self.fields: dict[str, FieldInfo] = {}
        self.pred_decls: dict[str, ast.PredDecl] = {}
        self.preds: dict[str, PredInfo] = {}
        self.assert_decls: dict[str, tuple[ast.FormulaNode, Optional[ast.Span]]] = {}
        self.declared: dict[str, str] = {}    # name -> kind, one flat namespace
        self.all_roots: frozenset = frozenset()
        self._fresh = itertools.count()

    # --- declaration collection ---

    def declare(self, name: str, kind: str, span: Optional[ast.Span]):
        if name in self.declared:
            raise DuplicateNameError(
                f"duplicate name {name!r} (already declared as {self.declared[name]})",
                span=span)
        self.declared[name] = kind

    def run(self) -> ResolvedModel:
        commands: dict[str, CommandInfo] = {}
        command_paras: list[ast.Paragraph] = []

        for p in self.model.paragraphs:
            if p.kind == "sig":
                for d in p.body:
                    self.declare(d.name, "sig", d.span)
                    self.sigs[d.name] = SigInfo(
                        name=d.name, is_abstract=d.is_abstract, mult=d.mult,
                        parent=d.parent, span=d.span)
            elif p.kind == "pred":
                self.declare(p.name, "pred", p.span)
                self.pred_decls[p.name] = p.body
            elif p.kind == "assert":
                self.declare(p.name, "assert", p.span)
                self.assert_decls[p.name] = (p.body, p.span)
            elif p.kind == "fact":
                if "$" not in p.name:
                    self.declare(p.name, "fact", p.span)
            elif p.kind in ("run", "check"):
                command_paras.append(p)

        # fields share the flat namespace
        for p in self.model.paragraphs:
            if p.kind != "sig":
                continue
            for d in p.body:
                for f in d.fields:
                    self.declare(f.name, "field", f.span)
                    self.fields[f.name] = FieldInfo(
                        name=f.name, owner=d.name, cols=[d.name] + list(f.cols),
                        range_mult=f.range_mult, arrow_mult=f.arrow_mult, span=f.span)

        self._link_hierarchy()
        self._check_field_columns()
        self.all_roots = frozenset(s for s, i in self.sigs.items() if i.parent is None)

        # predicate bodies, eagerly resolved and inlined (rejects recursion)
        for name in self.pred_decls:
            self._resolve_pred(name, stack=())

        facts: list[tuple[str, ast.FormulaNode]] = []
        for p in self.model.paragraphs:
            if p.kind == "fact":
                f, _ = self._formula(p.body, {})
                facts.append((p.name, f))

        asserts: dict[str, ast.FormulaNode] = {}
        for name, (body, _span) in self.assert_decls.items():
            f, _ = self._formula(body, {})
            asserts[name] = f

        for p in command_paras:
            cmd: ast.Command = p.body
            if cmd.name in commands:
                raise DuplicateNameError(
                    f"duplicate command name {cmd.name!r}", span=cmd.span)
            commands[cmd.name] = self._resolve_command(cmd, asserts)

        return ResolvedModel(
            source=self.model, sigs=self.sigs,
            top_sigs=[s for s, i in self.sigs.items() if i.parent is None],
            fields=self.fields, facts=facts, preds=self.preds,
            asserts=asserts, commands=commands)

    def _link_hierarchy(self):
        for name, info in self.sigs.items():
            if info.parent is None:
                continue
            if info.parent not in self.sigs:
                if info.parent in self.declared:
                    raise ResolveError(
                        f"{info.parent!r} is not a signature and cannot be extended",
                        span=info.span)
                raise UnknownNameError(f"unknown signature {info.parent!r}",
                                       span=info.span)
            self.sigs[info.parent].children.append(name)
        # roots + cycle detection
        for name, info in self.sigs.items():
            seen = {name}
            cur = info
            while cur.parent is not None:
                if cur.parent in seen:
                    raise CyclicExtendsError(
                        f"signature extension cycle through {name!r}", span=info.span)
                seen.add(cur.parent)
                cur = self.sigs[cur.parent]
            info.root = cur.name

    def _check_field_columns(self):
        for f in self.fields.values():
            for col in f.cols:
                if col not in self.sigs:
                    if col in self.declared:
                        raise ResolveError(
                            f"field column {col!r} is not a signature", span=f.span)
                    raise UnknownNameError(
                        f"unknown signature {col!r} in field {f.name!r}", span=f.span)

    # --- predicates ---

    def _resolve_pred(self, name: str, stack: tuple) -> PredInfo:
        if name in self.preds:
            return self.preds[name]
        if name in stack:
            chain = " -> ".join(stack + (name,))
            raise RecursivePredicateError(
                f"recursive predicate call: {chain}",
                span=self.pred_decls[name].span)
        decl = self.pred_decls[name]
        env: dict[str, int] = {}
        params: list[tuple[str, ast.ExprNode, int]] = []
        seen_params = set()
        for pname, ptype in decl.params:
            if pname in seen_params:
                raise DuplicateNameError(f"duplicate parameter {pname!r}",
                                         span=decl.span)
            seen_params.add(pname)
            ptype2, ty = self._expr(ptype, {})
            env[pname] = ty[0]
            params.append((pname, ptype2, ty[0]))
        body, _ = self._formula(decl.body, env, pred_stack=stack + (name,))
        info = PredInfo(name=name, params=params, body=body, span=decl.span)
        self.preds[name] = info
        return info

    def _resolve_command(self, cmd: ast.Command,
                         asserts: dict[str, ast.FormulaNode]) -> CommandInfo:
        scope = self._resolve_scope(cmd.scope)
        if cmd.body is not None:
            formula, _ = self._formula(cmd.body, {})
        else:
            target = cmd.target_name
            if cmd.kind == "run":
                if target not in self.pred_decls:
                    raise UnknownNameError(
                        f"run target {target!r} is not a declared predicate",
                        span=cmd.span)
                info = self._resolve_pred(target, stack=())
                if info.params:
                    raise ArityMismatchError(
                        f"run target {target!r} takes parameters; "
                        "run requires a parameterless predicate", span=cmd.span)
                formula = info.body
            else:
                if target not in self.assert_decls:
                    raise UnknownNameError(
                        f"check target {target!r} is not a declared assertion",
                        span=cmd.span)
                formula = asserts[target]
        return CommandInfo(name=cmd.name, kind=cmd.kind, secret=cmd.secret,
                           scope=scope, formula=formula, span=cmd.span)

    def _resolve_scope(self, s: ast.ScopeDecl) -> ScopeInfo:
        overrides: dict[str, tuple[int, bool]] = {}
        for sig, bound, exactly in s.overrides:
            if sig not in self.sigs:
                raise UnknownNameError(
                    f"scope override names unknown signature {sig!r}", span=s.span)
            if self.sigs[sig].parent is not None:
                raise InvalidScopeError(
                    f"scope override on {sig!r}: only top-level signatures "
                    "can be bounded", span=s.span)
            if sig in overrides:
                raise InvalidScopeError(
                    f"duplicate scope override for {sig!r}", span=s.span)
            overrides[sig] = (bound, exactly)
        return ScopeInfo(default=s.default, overrides=overrides)

    # --- formulas ---

    def _formula(self, f: ast.FormulaNode, env: dict[str, int],
                 pred_stack: tuple = ()) -> tuple[ast.FormulaNode, None]:
        if isinstance(f, ast.ConstFormula):
            return ast.ConstFormula(f.value, span=f.span), None
        if isinstance(f, ast.BinFormula):
            l, _ = self._formula(f.l, env, pred_stack)
            r, _ = self._formula(f.r, env, pred_stack)
            return ast.BinFormula(f.op, l, r, span=f.span), None
        if isinstance(f, ast.NotFormula):
            g, _ = self._formula(f.f, env, pred_stack)
            return ast.NotFormula(g, span=f.span), None
        if isinstance(f, ast.Compare):
            l, lt = self._expr(f.l, env)
            r, rt = self._expr(f.r, env)
            if lt[0] != rt[0]:
                raise ArityMismatchError(
                    f"cannot compare arity-{lt[0]} and arity-{rt[0]} expressions",
                    span=f.span)
            return ast.Compare(f.op, l, r, span=f.span), None
        if isinstance(f, ast.MultFormula):
            e, _ = self._expr(f.e, env)
            return ast.MultFormula(f.kind, e, span=f.span), None
        if isinstance(f, ast.Quant):
            env2 = dict(env)
            decls2: list[tuple[str, ast.ExprNode]] = []
            for var, dexpr in f.decls:
                de, ty = self._expr(dexpr, env2)
                if ty[0] != 1:
                    raise ArityMismatchError(
                        f"quantified variable {var!r} must range over a set "
                        f"(arity 1), not arity {ty[0]}", span=f.span)
                env2[var] = 1
                decls2.append((var, de))
            body, _ = self._formula(f.body, env2, pred_stack)
            return ast.Quant(f.kind, decls2, body, span=f.span), None
        if isinstance(f, ast.PredCall):
            return self._pred_call(f, env, pred_stack), None
        raise ResolveError(f"unexpected formula node {type(f).__name__}")

    def _pred_call(self, call: ast.PredCall, env: dict[str, int],
                   pred_stack: tuple) -> ast.FormulaNode:
        name = call.name
        if name in env:
            raise ResolveError(
                f"variable {name!r} used as a formula", span=call.span)
        if name not in self.pred_decls:
            if name in self.declared:
                raise ResolveError(
                    f"{name!r} is a {self.declared[name]}, not a predicate",
                    span=call.span)
            raise UnknownNameError(f"unknown name {name!r}", span=call.span)
        info = self._resolve_pred(name, pred_stack)
        if len(call.args) != len(info.params):
            raise ArityMismatchError(
                f"predicate {name!r} takes {len(info.params)} argument(s), "
                f"got {len(call.args)}", span=call.span)
        mapping: dict[str, ast.ExprNode] = {}
        for (pname, _ptype, parity), arg in zip(info.params, call.args):
            arg2, ty = self._expr(arg, env)
            if ty[0] != parity:
                raise ArityMismatchError(
                    f"argument for {pname!r} of predicate {name!r} must have "
                    f"arity {parity}, got arity {ty[0]}", span=call.span)
            mapping[pname] = arg2
        return _substitute(info.body, mapping, self._fresh)

    # --- expressions ---

    def _expr(self, e: ast.ExprNode, env: dict[str, int]) -> tuple[ast.ExprNode, _Type]:
        if isinstance(e, ast.NameExpr):
            if e.name in env:
                v = ast.VarExpr(e.name, span=e.span)
                v.arity = env[e.name]
                return v, (env[e.name], self.all_roots, self.all_roots)
            if e.name in self.sigs:
                n = ast.NameExpr(e.name, span=e.span)
                n.ref, n.arity = "sig", 1
                root = frozenset({self.sigs[e.name].root})
                return n, (1, root, root)
            if e.name in self.fields:
                info = self.fields[e.name]
                n = ast.NameExpr(e.name, span=e.span)
                n.ref, n.arity = "field", info.arity
                return n, (info.arity,
                           frozenset({self.sigs[info.cols[0]].root}),
                           frozenset({self.sigs[info.cols[-1]].root}))
            if e.name in self.declared:
                raise ResolveError(
                    f"{e.name!r} is a {self.declared[e.name]} and cannot be "
                    "used as an expression", span=e.span)
            raise UnknownNameError(f"unknown name {e.name!r}", span=e.span)
        if isinstance(e, ast.VarExpr):
            if e.name not in env:
                raise UnknownNameError(f"unbound variable {e.name!r}", span=e.span)
            v = ast.VarExpr(e.name, span=e.span)
            v.arity = env[e.name]
            return v, (env[e.name], self.all_roots, self.all_roots)
        if isinstance(e, ast.UnivExpr):
            n = ast.UnivExpr(span=e.span)
            n.arity = 1
            return n, (1, self.all_roots, self.all_roots)
        if isinstance(e, ast.IdenExpr):
            n = ast.IdenExpr(span=e.span)
            n.arity = 2
            return n, (2, self.all_roots, self.all_roots)
        if isinstance(e, ast.NoneExpr):
            n = ast.NoneExpr(span=e.span)
            n.arity = 1
            return n, (1, frozenset(), frozenset())
        if isinstance(e, ast.UnaryExpr):
            inner, ty = self._expr(e.e, env)
            if ty[0] != 2:
                raise ArityMismatchError(
                    f"operand of {e.op!r} must be binary, got arity {ty[0]}",
                    span=e.span)
            if e.op in ("^", "*") and ty[1] and ty[2] and not (ty[1] & ty[2]):
                raise ArityMismatchError(
                    f"closure {e.op!r} needs compatible endpoint columns",
                    span=e.span)
            n = ast.UnaryExpr(e.op, inner, span=e.span)
            n.arity = 2
            if e.op == "~":
                return n, (2, ty[2], ty[1])
            if e.op == "*":
                return n, (2, self.all_roots, self.all_roots)
            return n, (2, ty[1], ty[2])
        if isinstance(e, ast.BinExpr):
            l, lt = self._expr(e.l, env)
            r, rt = self._expr(e.r, env)
            if e.op in ("+", "-", "&"):
                if lt[0] != rt[0]:
                    raise ArityMismatchError(
                        f"operands of {e.op!r} must share an arity, got "
                        f"{lt[0]} and {rt[0]}", span=e.span)
                n = ast.BinExpr(e.op, l, r, span=e.span)
                n.arity = lt[0]
                if e.op == "+":
                    ty = (lt[0], lt[1] | rt[1], lt[2] | rt[2])
                elif e.op == "-":
                    ty = lt
                else:
                    ty = (lt[0], lt[1] & rt[1], lt[2] & rt[2])
                return n, ty
            if e.op == "->":
                arity = lt[0] + rt[0]
                if arity > 3:
                    raise ArityMismatchError(
                        f"product of arity {lt[0]} and {rt[0]} exceeds the "
                        "supported maximum arity 3", span=e.span)
                n = ast.BinExpr("->", l, r, span=e.span)
                n.arity = arity
                return n, (arity, lt[1], rt[2])
            if e.op == ".":
                arity = lt[0] + rt[0] - 2
                if arity < 1:
                    raise ArityMismatchError(
                        "join of two unary expressions yields arity 0",
                        span=e.span)
                if arity > 3:
                    raise ArityMismatchError(
                        f"join result arity {arity} exceeds the supported "
                        "maximum arity 3", span=e.span)
                if lt[2] and rt[1] and not (lt[2] & rt[1]):
                    raise ArityMismatchError(
                        "join columns are disjoint; this join is always empty",
                        span=e.span)
                n = ast.BinExpr(".", l, r, span=e.span)
                n.arity = arity
                if lt[0] > 1:
                    left = lt[1]
                else:
                    left = rt[2] if rt[0] == 2 else self.all_roots
                if rt[0] > 1:
                    right = rt[2]
                else:
                    right = lt[1] if lt[0] == 2 else self.all_roots
                return n, (arity, left, right)
        raise ResolveError(f"unexpected expression node {type(e).__name__}")


def _substitute(f: ast.FormulaNode, mapping: dict[str, ast.ExprNode],
                fresh: "itertools.count") -> ast.FormulaNode:
    """body[param := arg], renaming bound variables that would capture."""
    free = set()
    for arg in mapping.values():
        free |= _free_vars(arg)

    def sub_f(node: ast.FormulaNode, m: dict[str, ast.ExprNode]) -> ast.FormulaNode:
        if isinstance(node, ast.ConstFormula):
            return ast.ConstFormula(node.value, span=node.span)
        if isinstance(node, ast.BinFormula):
            return ast.BinFormula(node.op, sub_f(node.l, m), sub_f(node.r, m),
                                  span=node.span)
        if isinstance(node, ast.NotFormula):
            return ast.NotFormula(sub_f(node.f, m), span=node.span)
        if isinstance(node, ast.Compare):
            return ast.Compare(node.op, sub_e(node.l, m), sub_e(node.r, m),
                               span=node.span)
        if isinstance(node, ast.MultFormula):
            return ast.MultFormula(node.kind, sub_e(node.e, m), span=node.span)
        if isinstance(node, ast.Quant):
            m2 = dict(m)
            rename: dict[str, ast.ExprNode] = {}
            decls2 = []
            for var, dexpr in node.decls:
                dexpr2 = sub_e(dexpr, {**m2, **rename})
                if var in free:
                    nv = f"{var}${next(fresh)}"
                    rv = ast.VarExpr(nv)
                    rv.arity = 1
                    rename[var] = rv
                    m2.pop(var, None)
                    decls2.append((nv, dexpr2))
                else:
                    m2.pop(var, None)
                    rename.pop(var, None)
                    decls2.append((var, dexpr2))
            inner = {**m2, **rename}
            return ast.Quant(node.kind, decls2, sub_f(node.body, inner),
                             span=node.span)
        raise ResolveError(f"unexpected node in substitution: {type(node).__name__}")

    def sub_e(node: ast.ExprNode, m: dict[str, ast.ExprNode]) -> ast.ExprNode:
        if isinstance(node, ast.VarExpr):
            if node.name in m:
                return m[node.name]
            v = ast.VarExpr(node.name, span=node.span)
            v.arity = node.arity
            return v
        if isinstance(node, ast.NameExpr):
            n = ast.NameExpr(node.name, span=node.span)
            n.ref, n.arity = node.ref, node.arity
            return n
        if isinstance(node, (ast.UnivExpr, ast.IdenExpr, ast.NoneExpr)):
            n = type(node)(span=node.span)
            n.arity = node.arity
            return n
        if isinstance(node, ast.UnaryExpr):
            n = ast.UnaryExpr(node.op, sub_e(node.e, m), span=node.span)
            n.arity = node.arity
            return n
        if isinstance(node, ast.BinExpr):
            n = ast.BinExpr(node.op, sub_e(node.l, m), sub_e(node.r, m),
                            span=node.span)
            n.arity = node.arity
            return n
        raise ResolveError(f"unexpected node in substitution: {type(node).__name__}")

    return sub_f(f, dict(mapping))


def _free_vars(e: ast.ExprNode) -> set[str]:
    out = set()
    for node in ast.walk_expr(e):
        if isinstance(node, ast.VarExpr):
            out.add(node.name)
    return out


def resolve(model: ast.SourceModel) -> ResolvedModel:
    """Resolve a parsed model; raises ResolveError subclasses on failure."""
    return _Resolver(model).run()
