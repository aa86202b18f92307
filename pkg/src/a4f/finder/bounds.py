"""Candidate atoms, tuples, and boolean variable numbering for a scope.

Variable numbering is a pure function of the resolved model and the scope:
signatures and fields are processed in sorted-name order, atoms in index
order, and candidate tuples in row-major index order.  Sorting by name
(rather than declaration order) keeps numbering stable when paragraphs are
reordered, which the split/merge round trip relies on.

Variables are numbered from 1 (CNF convention):
  1. presence variables per top-level sig, atom by atom; a sig scoped with
     ``exactly`` gets no variables (presence is fixed true),
  2. membership variables per descendant sig, per candidate atom of its root,
  3. tuple variables per field, per candidate tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ScopeTooLargeError
from ..lang.resolver import ResolvedModel, ScopeInfo

DEFAULT_MAX_SCOPE = 8
HARD_MAX_SCOPE = 12


@dataclass
class Bounds:
    top_order: list[str]                       # top-level sigs, sorted by name
    sub_order: list[str]                       # proper descendants, sorted by name
    atoms: dict[str, list[str]]                # top sig -> candidate atom names
    sig_bound: dict[str, tuple[int, bool]]     # top sig -> (bound, exactly)
    presence_var: dict[tuple[str, int], int] = field(default_factory=dict)
    membership_var: dict[tuple[str, str], int] = field(default_factory=dict)
    tuple_var: dict[tuple[str, tuple], int] = field(default_factory=dict)
    field_tuples: dict[str, list[tuple]] = field(default_factory=dict)
    n_vars: int = 0
    var_order: list[tuple] = field(default_factory=list)   # descriptors, 1-based

    def atom_root(self, atom: str) -> str:
        return atom.split("$", 1)[0]

    def candidate_atoms(self, model: ResolvedModel, sig: str) -> list[str]:
        """All candidate atoms that could populate ``sig``."""
        return self.atoms[model.root_of(sig)]


def compute_bounds(model: ResolvedModel, scope: ScopeInfo,
                   max_scope: int = DEFAULT_MAX_SCOPE) -> Bounds:
    """Allocate candidate atoms and variables for ``model`` under ``scope``."""
    max_scope = min(max_scope, HARD_MAX_SCOPE)
    top_order = sorted(model.top_sigs)
    atoms: dict[str, list[str]] = {}
    sig_bound: dict[str, tuple[int, bool]] = {}
    for s in top_order:
        bound, exactly = scope.bound(s)
        if bound > max_scope:
            raise ScopeTooLargeError(
                f"scope {bound} for {s!r} exceeds the configured maximum "
                f"of {max_scope}")
        atoms[s] = [f"{s}${i}" for i in range(bound)]
        sig_bound[s] = (bound, exactly)

    sub_order = sorted(s for s in model.sigs if model.sigs[s].parent is not None)

    b = Bounds(top_order=top_order, sub_order=sub_order, atoms=atoms,
               sig_bound=sig_bound)
    nxt = 1
    for s in top_order:
        _, exactly = sig_bound[s]
        if exactly:
            continue
        for i in range(len(atoms[s])):
            b.presence_var[(s, i)] = nxt
            b.var_order.append(("presence", s, i))
            nxt += 1
    for s in sub_order:
        root = model.root_of(s)
        for a in atoms[root]:
            b.membership_var[(s, a)] = nxt
            b.var_order.append(("member", s, a))
            nxt += 1
    for fname in sorted(model.fields):
        fi = model.fields[fname]
        cols = [atoms[model.root_of(c)] for c in fi.cols]
        tuples: list[tuple] = []
        if all(cols):
            idx = [0] * len(cols)
            total = 1
            for c in cols:
                total *= len(c)
            for _ in range(total):
                tuples.append(tuple(cols[k][idx[k]] for k in range(len(cols))))
                for k in range(len(cols) - 1, -1, -1):
                    idx[k] += 1
                    if idx[k] < len(cols[k]):
                        break
                    idx[k] = 0
        b.field_tuples[fname] = tuples
        for t in tuples:
            b.tuple_var[(fname, t)] = nxt
            b.var_order.append(("tuple", fname, t))
            nxt += 1
    b.n_vars = nxt - 1
    return b
