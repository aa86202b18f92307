"""Brute-force enumeration oracle for bounded analysis.

Walks every assignment of the bounds variables in the same lexicographic
order the solver uses (variable id ascending, false before true), checks
the structural rules and multiplicities directly on sets, evaluates facts
and the command target with the set-theoretic evaluator, and collects the
satisfying instances.  It shares the bounds data with the solver but none
of the translation or SAT machinery, so agreement between the two is a
meaningful check.

Enumeration is organized block-wise purely for speed: presence prefixes
per top-level sig, then membership bit vectors, then free tuple bits
(tuples whose column atoms are absent are pinned false, exactly as the
solver's structural constraints force them).  The visit order over full
assignments is unchanged.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import OracleTooLargeError
from ..lang.resolver import ResolvedModel
from .bounds import DEFAULT_MAX_SCOPE, Bounds, compute_bounds
from .evaluate import eval_formula
from .instance import Instance

ORACLE_VAR_CAP = 24


@dataclass
class OracleResult:
    sat: bool
    count: int
    instances: list[Instance]


def _size_ok(mult: str, n: int) -> bool:
    if mult == "one":
        return n == 1
    if mult == "lone":
        return n <= 1
    if mult == "some":
        return n >= 1
    return True


def brute_force_oracle(model: ResolvedModel, command_name: str, *,
                       max_scope: int = DEFAULT_MAX_SCOPE,
                       var_cap: int = ORACLE_VAR_CAP) -> OracleResult:
    """All satisfying instances of a command, in enumeration order."""
    cmd = model.commands[command_name]
    bounds = compute_bounds(model, cmd.scope, max_scope=max_scope)
    if bounds.n_vars > var_cap:
        raise OracleTooLargeError(
            f"{bounds.n_vars} bounds variables exceed the oracle cap of {var_cap}")

    instances: list[Instance] = []
    for members in _sig_choices(model, bounds):
        _collect_field_choices(model, bounds, cmd, members, instances)
    return OracleResult(sat=bool(instances), count=len(instances),
                        instances=instances)


def _sig_choices(model: ResolvedModel, bounds: Bounds):
    """Yield valid sig-membership maps in lexicographic variable order."""
    top_sizes: list[list[int]] = []
    for s in bounds.top_order:
        bound, exactly = bounds.sig_bound[s]
        if exactly:
            sizes = [bound]
        else:
            sizes = list(range(bound + 1))   # ascending = lex over presence bits
        top_sizes.append(sizes)

    sub_bits = [(s, a) for s in bounds.sub_order
                for a in bounds.atoms[model.root_of(s)]]

    for combo in itertools.product(*top_sizes):
        members: dict[str, set] = {}
        ok = True
        for s, size in zip(bounds.top_order, combo):
            if not _size_ok(model.sigs[s].mult, size):
                ok = False
                break
            members[s] = set(bounds.atoms[s][:size])
        if not ok:
            continue
        if not sub_bits:
            yield members
            continue
        for bits in itertools.product((False, True), repeat=len(sub_bits)):
            sub_members: dict[str, set] = {s: set() for s in bounds.sub_order}
            for (s, a), on in zip(sub_bits, bits):
                if on:
                    sub_members[s].add(a)
            full = dict(members)
            full.update(sub_members)
            if _membership_ok(model, full):
                yield full


def _membership_ok(model: ResolvedModel, members: dict[str, set]) -> bool:
    for s in model.sigs:
        info = model.sigs[s]
        if info.parent is not None:
            if not members[s] <= members[info.parent]:
                return False
            if not _size_ok(info.mult, len(members[s])):
                return False
        children = sorted(info.children)
        if not children:
            continue
        union: set = set()
        for i, c in enumerate(children):
            for d in children[i + 1:]:
                if members[c] & members[d]:
                    return False
            union |= members[c]
        if info.is_abstract and not members[s] <= union:
            return False
    return True


def _collect_field_choices(model: ResolvedModel, bounds: Bounds, cmd,
                           members: dict[str, set],
                           instances: list[Instance]):
    free: list[tuple[str, tuple]] = []
    for fname in sorted(model.fields):
        fi = model.fields[fname]
        for t in bounds.field_tuples[fname]:
            if all(atom in members[col] for col, atom in zip(fi.cols, t)):
                free.append((fname, t))

    universe = [a for s in bounds.top_order for a in sorted(members[s])]
    sig_lists = {s: sorted(v) for s, v in members.items()}

    for bits in itertools.product((False, True), repeat=len(free)):
        fields: dict[str, list[tuple]] = {f: [] for f in model.fields}
        for (fname, t), on in zip(free, bits):
            if on:
                fields[fname].append(t)
        if not _field_mults_ok(model, members, fields):
            continue
        inst = Instance.build(sig_lists, fields, universe)
        if all(eval_formula(f, inst, {}) for _n, f in model.facts):
            holds = eval_formula(cmd.formula, inst, {})
            if (cmd.kind == "run" and holds) or (cmd.kind == "check" and not holds):
                instances.append(inst)


def _field_mults_ok(model: ResolvedModel, members: dict[str, set],
                    fields: dict[str, list[tuple]]) -> bool:
    for fname, tuples in fields.items():
        fi = model.fields[fname]
        if fi.arity == 2:
            if fi.range_mult == "set":
                continue
            for o in members[fi.cols[0]]:
                n = sum(1 for t in tuples if t[0] == o)
                if not _size_ok(fi.range_mult, n):
                    return False
        else:
            left, right = fi.arrow_mult
            if right != "set":
                for o in members[fi.cols[0]]:
                    for a in members[fi.cols[1]]:
                        n = sum(1 for t in tuples if t[0] == o and t[1] == a)
                        if not _size_ok(right, n):
                            return False
            if left != "set":
                for o in members[fi.cols[0]]:
                    for x in members[fi.cols[2]]:
                        n = sum(1 for t in tuples if t[0] == o and t[2] == x)
                        if not _size_ok(left, n):
                            return False
    return True
