"""Seeded generators shared by the unit and acceptance suites.

``gen_model_source`` produces small resolvable MiniAlloy models: up to two
top-level sigs, one sub-sig level, fields of arity 2 or 3, scopes up to 2,
and command/fact formulas up to depth 4 drawing on quantifiers, closure,
and transpose.  Models are kept within an estimated bounds-variable budget
so the brute-force oracle stays fast.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field


@dataclass
class GenSig:
    name: str
    root: str
    mult: str = "set"
    parent: str | None = None
    is_abstract: bool = False


@dataclass
class GenField:
    name: str
    owner: GenSig
    cols: list[GenSig] = field(default_factory=list)   # beyond owner
    range_mult: str = "set"
    arrow: tuple[str, str] | None = None

    @property
    def arity(self) -> int:
        return 1 + len(self.cols)


@dataclass
class GenModel:
    sigs: list[GenSig]
    fields: list[GenField]
    scope_text: str
    bound_of: dict[str, int]
    secretable: bool = True


_MULTS = ("set", "one", "lone", "some")


def _estimate_vars(model: GenModel) -> int:
    total = 0
    for s in model.sigs:
        if s.parent is None:
            total += model.bound_of[s.name]      # presence (worst case)
        else:
            total += model.bound_of[s.root]      # membership
    for f in model.fields:
        n = model.bound_of[f.owner.root]
        for c in f.cols:
            n *= model.bound_of[c.root]
        total += n
    return total


def _gen_structure(rng: random.Random) -> GenModel:
    sigs: list[GenSig] = []
    n_top = 1 if rng.random() < 0.55 else 2
    top_names = ["A", "B"][:n_top]
    for name in top_names:
        mult = "set" if rng.random() < 0.85 else rng.choice(("one", "lone", "some"))
        sigs.append(GenSig(name=name, root=name, mult=mult))
    if rng.random() < 0.35:
        parent = sigs[0]
        parent.is_abstract = rng.random() < 0.6
        n_children = rng.choice((1, 2))
        for i in range(n_children):
            cname = f"C{i}"
            cmult = "set" if rng.random() < 0.9 else rng.choice(("lone", "some"))
            sigs.append(GenSig(name=cname, root=parent.name, mult=cmult,
                               parent=parent.name))

    # scopes: default 1..2 with optional per-sig overrides
    default = rng.choice((1, 2, 2))
    bound_of: dict[str, int] = {}
    overrides = []
    for s in sigs:
        if s.parent is not None:
            continue
        if rng.random() < 0.3:
            bound = rng.choice((1, 2))
            exactly = rng.random() < 0.5
            overrides.append((s.name, bound, exactly))
            bound_of[s.name] = bound
        else:
            bound_of[s.name] = default
    scope_text = f"for {default}"
    if overrides:
        scope_text += " but " + ", ".join(
            f"{'exactly ' if ex else ''}{b} {n}" for n, b, ex in overrides)

    fields: list[GenField] = []
    fnames = iter(["f", "g", "h"])
    if rng.random() < 0.3 and n_top == 1:
        owner = rng.choice(sigs)
        mid = rng.choice(sigs)
        ran = rng.choice(sigs)
        arrow = ("set", "set")
        if rng.random() < 0.4:
            arrow = (rng.choice(_MULTS), rng.choice(_MULTS))
        fields.append(GenField(name=next(fnames), owner=owner, cols=[mid, ran],
                               arrow=arrow))
    n_binary = rng.choice((0, 1, 1, 2))
    for _ in range(n_binary):
        owner = rng.choice(sigs)
        ran = rng.choice(sigs)
        range_mult = rng.choice(("set", "set", "one", "lone", "some"))
        fields.append(GenField(name=next(fnames), owner=owner, cols=[ran],
                               range_mult=range_mult))
    return GenModel(sigs=sigs, fields=fields, scope_text=scope_text,
                    bound_of=bound_of)


class _FormulaGen:
    """Type-correct random formulas over a generated structure."""

    def __init__(self, rng: random.Random, model: GenModel):
        self.rng = rng
        self.model = model
        self.vars: list[tuple[str, str]] = []      # (name, root)
        self.var_counter = 0

    def unary(self, depth: int) -> tuple[str, set[str]]:
        """(text, roots) of an arity-1 expression."""
        rng = self.rng
        choices = ["sig", "sig", "var", "univ"]
        if depth > 0:
            choices += ["setop", "join21", "join12"]
        kind = rng.choice(choices)
        if kind == "var" and not self.vars:
            kind = "sig"
        if kind == "sig":
            s = rng.choice(self.model.sigs)
            return s.name, {s.root}
        if kind == "var":
            name, root = rng.choice(self.vars)
            return name, {root}
        if kind == "univ":
            return "univ", {s.root for s in self.model.sigs}
        if kind == "setop":
            l, lr = self.unary(depth - 1)
            r, rr = self.unary(depth - 1)
            op = rng.choice(("+", "-", "&"))
            roots = lr | rr if op == "+" else lr
            return f"({l} {op} {r})", roots
        # join a unary expression through a binary relation, either side
        rel, lr, rr = self.binary(depth - 1)
        if rel is None:
            return self.unary(depth - 1)
        e, er = self.unary(depth - 1)
        if kind == "join21" and er & lr:
            return f"({e}.{rel})", rr
        if er & rr:
            return f"({rel}.{e})", lr
        if er & lr:
            return f"({e}.{rel})", rr
        return self.unary(depth - 1)

    def binary(self, depth: int):
        """(text, left roots, right roots) of an arity-2 expression."""
        rng = self.rng
        rel2 = [f for f in self.model.fields if f.arity == 2]
        base: list[tuple[str, set, set]] = [
            (f.name, {f.owner.root}, {f.cols[0].root}) for f in rel2]
        base.append(("iden", {s.root for s in self.model.sigs},
                     {s.root for s in self.model.sigs}))
        for f in self.model.fields:
            if f.arity == 3:
                s = rng.choice(self.model.sigs)
                if s.root == f.owner.root:
                    base.append((f"({s.name}.{f.name})",
                                 {f.cols[0].root}, {f.cols[1].root}))
        if not base:
            return None, set(), set()
        text, lr, rr = rng.choice(base)
        if depth > 0 and rng.random() < 0.5:
            op = rng.choice(("~", "^", "*", "+", "&"))
            if op == "~":
                return f"~{text}", rr, lr
            if op in ("^", "*") and (lr & rr):
                allr = {s.root for s in self.model.sigs}
                return (f"{op}{text}", lr | rr, lr | rr) if op == "^" \
                    else (f"*{text}", allr, allr)
            if op in ("+", "&"):
                other, olr, orr = self.binary(depth - 1)
                if other is not None:
                    if op == "+":
                        return f"({text} + {other})", lr | olr, rr | orr
                    return f"({text} & {other})", lr, rr
        return text, lr, rr

    def formula(self, depth: int) -> str:
        rng = self.rng
        if depth <= 0:
            return self._leaf()
        roll = rng.random()
        if roll < 0.25:
            var = f"v{self.var_counter}"
            self.var_counter += 1
            dom = rng.choice(self.model.sigs)
            quant = rng.choice(("all", "some", "no", "lone", "one"))
            self.vars.append((var, dom.root))
            body = self.formula(depth - 1)
            self.vars.pop()
            return f"({quant} {var}: {dom.name} | {body})"
        if roll < 0.45:
            op = rng.choice(("and", "or", "implies", "iff"))
            return f"({self.formula(depth - 1)} {op} {self.formula(depth - 1)})"
        if roll < 0.55:
            return f"(not {self.formula(depth - 1)})"
        return self._leaf(depth)

    def _leaf(self, depth: int = 1) -> str:
        rng = self.rng
        kind = rng.random()
        if kind < 0.45:
            mult = rng.choice(("some", "no", "lone", "one"))
            if rng.random() < 0.5:
                e, _ = self.unary(depth - 1)
            else:
                e, _, _ = self.binary(depth - 1)
                if e is None:
                    e, _ = self.unary(depth - 1)
            return f"({mult} {e})"
        op = rng.choice(("in", "=", "!="))
        if rng.random() < 0.6:
            l, _ = self.unary(depth - 1)
            r, _ = self.unary(depth - 1)
        else:
            l, _, _ = self.binary(depth - 1)
            r2, _, _ = self.binary(depth - 1)
            if l is None or r2 is None:
                l, _ = self.unary(depth - 1)
                r, _ = self.unary(depth - 1)
            else:
                r = r2
        return f"({l} {op} {r})"


def gen_model_source(seed: int, *, with_secrets: bool = False,
                     max_vars: int = 14) -> str:
    """One deterministic corpus model as source text."""
    rng = random.Random(seed)
    for _attempt in range(50):
        model = _gen_structure(rng)
        if _estimate_vars(model) <= max_vars:
            break
    fg = _FormulaGen(rng, model)

    lines: list[str] = []
    for s in model.sigs:
        if s.parent is not None:
            continue
        lines.append(_sig_line(s, model))
    for s in model.sigs:
        if s.parent is None:
            continue
        lines.append(_sig_line(s, model))

    if rng.random() < 0.7:
        secret = with_secrets and rng.random() < 0.3
        if secret:
            lines.append("//SECRET")
        lines.append(f"fact Invariant {{ {fg.formula(rng.choice((1, 2, 3)))} }}")

    kind = rng.choice(("run", "check"))
    secret = with_secrets and rng.random() < 0.4
    if secret:
        lines.append("//SECRET")
    body = fg.formula(rng.choice((2, 3, 4)))
    lines.append(f"{kind} T0 {{ {body} }} {model.scope_text}")
    return "\n".join(lines) + "\n"


def _sig_line(s: GenSig, model: GenModel) -> str:
    parts = []
    if s.is_abstract:
        parts.append("abstract")
    if s.mult != "set":
        parts.append(s.mult)
    parts.append(f"sig {s.name}")
    if s.parent:
        parts.append(f"extends {s.parent}")
    fields = [f for f in model.fields if f.owner is s]
    decls = []
    for f in fields:
        if f.arity == 2:
            mult = f"{f.range_mult} " if f.range_mult != "set" else "set "
            decls.append(f"{f.name}: {mult}{f.cols[0].name}")
        else:
            l, r = f.arrow
            lm = f"{l} " if l != "set" else ""
            rm = f"{r} " if r != "set" else ""
            decls.append(f"{f.name}: {f.cols[0].name} {lm}-> {rm}{f.cols[1].name}")
    return " ".join(parts) + " { " + ", ".join(decls) + " }"


# --- synthetic derivation trees -------------------------------------------


def gen_tree_document(seed: int) -> dict:
    """A random derivation tree with known structure (document form).

    The root model declares 1..4 secret check challenges; sessions are
    random walks of executions attached at the root or at an existing node.
    """
    rng = random.Random(seed)
    n_challenges = rng.randint(1, 4)
    challenges = [f"Ch{i}OK" for i in range(n_challenges)]
    code_lines = ["sig A { r: set A }", "pred P0 { some A }"]
    for name in challenges:
        code_lines.append("//SECRET")
        code_lines.append(f"check {name} {{ P0 }} for 2")
    code_lines.append("run Explore { some r } for 2")
    root_code = "\n".join(code_lines) + "\n"

    counter = [0]

    def nid() -> str:
        counter[0] += 1
        return f"n{counter[0]:03d}"

    root_id = nid()
    nodes = [{"id": root_id, "parent": None, "time": _t(0), "code": root_code,
              "command": None, "result": None}]
    tick = [0]
    n_sessions = rng.randint(0, 6)
    for _ in range(n_sessions):
        if len(nodes) > 1 and rng.random() < 0.3:
            attach = rng.choice(nodes[1:])["id"]
        else:
            attach = root_id
        parent = attach
        for _step in range(rng.randint(1, 6)):
            tick[0] += 1
            command = rng.choice(challenges + ["Explore"])
            if command == "Explore":
                result = rng.choice(("sat", "unsat", "error"))
            else:
                result = rng.choice(("sat", "sat", "unsat", "limit"))
            node_id = nid()
            nodes.append({"id": node_id, "parent": parent, "time": _t(tick[0]),
                          "code": root_code, "command": command,
                          "result": result})
            parent = node_id
    return {"root": root_id, "nodes": nodes}


def _t(k: int) -> str:
    return f"2026-01-01T00:{k // 60:02d}:{k % 60:02d}.000Z"


def ground_truth_counts(document: dict) -> dict:
    """Independent all/some/none session counts via parent-map walking."""
    nodes = {n["id"]: n for n in document["nodes"]}
    root_id = document["root"]
    challenges = set()
    in_secret = False
    for line in nodes[root_id]["code"].splitlines():
        if line.strip() == "//SECRET":
            in_secret = True
            continue
        if in_secret and line.strip().startswith("check "):
            challenges.add(line.split()[1])
        in_secret = False
    has_child = {n["parent"] for n in document["nodes"] if n["parent"]}
    leaves = [n for n in document["nodes"]
              if n["id"] not in has_child and n["id"] != root_id]
    counts = {"all": 0, "some": 0, "none": 0, "sessions": 0}
    for leaf in leaves:
        solved = set()
        cur = leaf
        while cur["id"] != root_id:
            if cur["command"] in challenges and cur["result"] == "unsat":
                solved.add(cur["command"])
            cur = nodes[cur["parent"]]
        counts["sessions"] += 1
        if challenges and solved == challenges:
            counts["all"] += 1
        elif not solved:
            counts["none"] += 1
        else:
            counts["some"] += 1
    return counts
