"""Translation of a resolved command into a boolean circuit over bounds vars.

Relational expressions become matrices: maps from candidate tuples to
circuit nodes (missing tuple = false).  Quantifiers expand over candidate
atoms guarded by presence/membership literals; transitive closure is
iterated squaring with ceil(log2(n)) rounds over n candidate atoms.

The produced circuit conjoins, in order: structural constraints from the
bounds (monotone presence, sig multiplicities, hierarchy rules, tuples
implying column membership), field multiplicity constraints (range and
arrow), every fact, and the run target body (or the negation of the check
target body).
"""

from __future__ import annotations

import math

from ..errors import ResolveError
from ..lang import ast
from ..lang.resolver import ResolvedModel
from .bounds import Bounds
from .budget import Budget
from .circuit import Circuit

Matrix = dict[tuple, int]


class Translator:
    def __init__(self, model: ResolvedModel, bounds: Bounds, circuit: Circuit,
                 budget: Budget):
        self.model = model
        self.b = bounds
        self.c = circuit
        self.budget = budget

    # --- membership literals ---

    def member_lit(self, sig: str, atom: str) -> int:
        """Node that is true iff ``atom`` belongs to ``sig``."""
        info = self.model.sigs[sig]
        if info.parent is None:
            _, exactly = self.b.sig_bound[sig]
            if exactly:
                return self.c.TRUE
            idx = int(atom.split("$", 1)[1])
            return self.c.var(self.b.presence_var[(sig, idx)])
        return self.c.var(self.b.membership_var[(sig, atom)])

    def sig_matrix(self, sig: str) -> Matrix:
        root = self.model.root_of(sig)
        return {(a,): self.member_lit(sig, a) for a in self.b.atoms[root]}

    def univ_matrix(self) -> Matrix:
        m: Matrix = {}
        for s in self.b.top_order:
            for a in self.b.atoms[s]:
                m[(a,)] = self.member_lit(s, a)
        return m

    def iden_matrix(self) -> Matrix:
        m: Matrix = {}
        for s in self.b.top_order:
            for a in self.b.atoms[s]:
                m[(a, a)] = self.member_lit(s, a)
        return m

    def field_matrix(self, name: str) -> Matrix:
        return {t: self.c.var(self.b.tuple_var[(name, t)])
                for t in self.b.field_tuples[name]}

    # --- structural constraints ---

    def structural(self) -> list[int]:
        c, b = self.c, self.b
        out: list[int] = []
        for s in b.top_order:
            bound, exactly = b.sig_bound[s]
            lits = [self.member_lit(s, a) for a in b.atoms[s]]
            if not exactly:
                for i in range(1, bound):
                    out.append(c.implies(lits[i], lits[i - 1]))
            mult = self.model.sigs[s].mult
            if mult != "set":
                out.append(c.mult_constraint(mult, lits))
        for s in b.sub_order:
            info = self.model.sigs[s]
            root = self.model.root_of(s)
            for a in b.atoms[root]:
                out.append(c.implies(self.member_lit(s, a),
                                     self.member_lit(info.parent, a)))
            if info.mult != "set":
                out.append(c.mult_constraint(
                    info.mult, [self.member_lit(s, a) for a in b.atoms[root]]))
        for s in sorted(self.model.sigs):
            info = self.model.sigs[s]
            children = sorted(info.children)
            if not children:
                continue
            root = self.model.root_of(s)
            for i in range(len(children)):
                for j in range(i + 1, len(children)):
                    for a in b.atoms[root]:
                        out.append(c.not_(c.and_(
                            [self.member_lit(children[i], a),
                             self.member_lit(children[j], a)])))
            if info.is_abstract:
                for a in b.atoms[root]:
                    out.append(c.implies(
                        self.member_lit(s, a),
                        c.or_([self.member_lit(ch, a) for ch in children])))
        for fname in sorted(self.model.fields):
            fi = self.model.fields[fname]
            for t in b.field_tuples[fname]:
                self.budget.tick()
                cols = [self.member_lit(col, atom)
                        for col, atom in zip(fi.cols, t)]
                out.append(c.implies(c.var(b.tuple_var[(fname, t)]),
                                     c.and_(cols)))
        return out

    def field_mults(self) -> list[int]:
        c, b = self.c, self.b
        out: list[int] = []
        for fname in sorted(self.model.fields):
            fi = self.model.fields[fname]
            owner_atoms = b.candidate_atoms(self.model, fi.cols[0])
            if fi.arity == 2:
                if fi.range_mult == "set":
                    continue
                ran = b.candidate_atoms(self.model, fi.cols[1])
                for o in owner_atoms:
                    self.budget.tick()
                    lits = [c.var(b.tuple_var[(fname, (o, a))]) for a in ran]
                    out.append(c.implies(self.member_lit(fi.cols[0], o),
                                         c.mult_constraint(fi.range_mult, lits)))
            else:
                left, right = fi.arrow_mult
                mid = b.candidate_atoms(self.model, fi.cols[1])
                ran = b.candidate_atoms(self.model, fi.cols[2])
                for o in owner_atoms:
                    og = self.member_lit(fi.cols[0], o)
                    if right != "set":
                        for a in mid:
                            self.budget.tick()
                            lits = [c.var(b.tuple_var[(fname, (o, a, x))])
                                    for x in ran]
                            guard = c.and_([og, self.member_lit(fi.cols[1], a)])
                            out.append(c.implies(
                                guard, c.mult_constraint(right, lits)))
                    if left != "set":
                        for x in ran:
                            self.budget.tick()
                            lits = [c.var(b.tuple_var[(fname, (o, a, x))])
                                    for a in mid]
                            guard = c.and_([og, self.member_lit(fi.cols[2], x)])
                            out.append(c.implies(
                                guard, c.mult_constraint(left, lits)))
        return out

    # --- expressions ---

    def expr(self, e: ast.ExprNode, env: dict[str, str]) -> Matrix:
        self.budget.tick()
        c = self.c
        if isinstance(e, ast.NameExpr):
            if e.ref == "sig":
                return self.sig_matrix(e.name)
            return self.field_matrix(e.name)
        if isinstance(e, ast.VarExpr):
            return {(env[e.name],): c.TRUE}
        if isinstance(e, ast.UnivExpr):
            return self.univ_matrix()
        if isinstance(e, ast.IdenExpr):
            return self.iden_matrix()
        if isinstance(e, ast.NoneExpr):
            return {}
        if isinstance(e, ast.UnaryExpr):
            m = self.expr(e.e, env)
            if e.op == "~":
                return self._norm({k[::-1]: v for k, v in m.items()})
            if e.op == "^":
                return self._closure(m)
            if e.op == "*":
                return self._union(self._closure(m), self.iden_matrix())
        if isinstance(e, ast.BinExpr):
            l = self.expr(e.l, env)
            r = self.expr(e.r, env)
            if e.op == "+":
                return self._union(l, r)
            if e.op == "-":
                return self._norm(
                    {k: c.and_([v, c.not_(r.get(k, c.FALSE))])
                     for k, v in l.items()})
            if e.op == "&":
                return self._norm(
                    {k: c.and_([v, r[k]]) for k, v in l.items() if k in r})
            if e.op == "->":
                out: Matrix = {}
                for kl, vl in l.items():
                    for kr, vr in r.items():
                        self.budget.tick()
                        out[kl + kr] = c.and_([vl, vr])
                return self._norm(out)
            if e.op == ".":
                return self._join(l, r)
        raise ResolveError(f"untranslatable expression {type(e).__name__}")

    def _norm(self, m: Matrix) -> Matrix:
        c = self.c
        return {k: m[k] for k in sorted(m) if m[k] != c.FALSE}

    def _union(self, l: Matrix, r: Matrix) -> Matrix:
        c = self.c
        out = dict(l)
        for k, v in r.items():
            self.budget.tick()
            out[k] = c.or_([out[k], v]) if k in out else v
        return self._norm(out)

    def _join(self, l: Matrix, r: Matrix) -> Matrix:
        c = self.c
        by_first: dict[str, list[tuple[tuple, int]]] = {}
        for kr, vr in r.items():
            by_first.setdefault(kr[0], []).append((kr, vr))
        gathered: dict[tuple, list[int]] = {}
        for kl, vl in l.items():
            for kr, vr in by_first.get(kl[-1], ()):
                self.budget.tick()
                key = kl[:-1] + kr[1:]
                gathered.setdefault(key, []).append(c.and_([vl, vr]))
        return self._norm({k: c.or_(vs) for k, vs in gathered.items()})

    def _closure(self, m: Matrix) -> Matrix:
        atoms = set()
        for k in m:
            atoms.update(k)
        n = len(atoms)
        rounds = math.ceil(math.log2(n)) if n > 1 else 0
        s = self._norm(m)
        for _ in range(rounds):
            s = self._union(s, self._join(s, s))
        return s

    # --- formulas ---

    def formula(self, f: ast.FormulaNode, env: dict[str, str]) -> int:
        self.budget.tick()
        c = self.c
        if isinstance(f, ast.ConstFormula):
            return c.const(f.value)
        if isinstance(f, ast.BinFormula):
            l = self.formula(f.l, env)
            r = self.formula(f.r, env)
            if f.op == "and":
                return c.and_([l, r])
            if f.op == "or":
                return c.or_([l, r])
            if f.op == "implies":
                return c.implies(l, r)
            return c.iff(l, r)
        if isinstance(f, ast.NotFormula):
            return c.not_(self.formula(f.f, env))
        if isinstance(f, ast.Compare):
            l = self.expr(f.l, env)
            r = self.expr(f.r, env)
            fwd = c.and_([c.implies(v, r.get(k, c.FALSE)) for k, v in l.items()])
            if f.op == "in":
                return fwd
            if f.op == "notin":
                return c.not_(fwd)
            bwd = c.and_([c.implies(v, l.get(k, c.FALSE)) for k, v in r.items()])
            both = c.and_([fwd, bwd])
            return both if f.op == "eq" else c.not_(both)
        if isinstance(f, ast.MultFormula):
            vals = list(self.expr(f.e, env).values())
            if f.kind == "some":
                return c.or_(vals)
            if f.kind == "no":
                return c.not_(c.or_(vals))
            if f.kind == "lone":
                return c.at_most_one(vals)
            return c.exactly_one(vals)
        if isinstance(f, ast.Quant):
            terms: list[tuple[int, int]] = []   # (guard, body)
            self._expand(f.decls, 0, env, self.c.TRUE, f.body, terms)
            if f.kind == "all":
                return c.and_([c.implies(g, bdy) for g, bdy in terms])
            if f.kind == "some":
                return c.or_([c.and_([g, bdy]) for g, bdy in terms])
            if f.kind == "no":
                return c.and_([c.implies(g, c.not_(bdy)) for g, bdy in terms])
            hits = [c.and_([g, bdy]) for g, bdy in terms]
            if f.kind == "lone":
                return c.at_most_one(hits)
            return c.exactly_one(hits)
        raise ResolveError(f"untranslatable formula {type(f).__name__}")

    def _expand(self, decls, i, env, guard, body, terms):
        if i == len(decls):
            terms.append((guard, self.formula(body, env)))
            return
        var, dexpr = decls[i]
        m = self.expr(dexpr, env)
        for key in sorted(m):
            self.budget.tick()
            env2 = dict(env)
            env2[var] = key[0]
            self._expand(decls, i + 1, env2,
                         self.c.and_([guard, m[key]]), body, terms)


def translate(model: ResolvedModel, command_name: str, bounds: Bounds,
              circuit: Circuit, budget: Budget) -> int:
    """Build the full circuit for one command; returns the root node."""
    cmd = model.commands[command_name]
    t = Translator(model, bounds, circuit, budget)
    parts = t.structural()
    parts.extend(t.field_mults())
    for _name, f in model.facts:
        parts.append(t.formula(f, {}))
    target = t.formula(cmd.formula, {})
    parts.append(target if cmd.kind == "run" else circuit.not_(target))
    return circuit.and_(parts)
