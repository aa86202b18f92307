"""Session extraction from derivation trees.

A session is one leaf-to-root branch with the root excluded, approximating
one user's continuous interaction.  A challenge counts as solved in a
session when some node on the branch executed that secret check with an
unsat result; sharing a prefix between branches means a solve in the
prefix counts for every session extending it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..challenge import split
from ..errors import TreeFormatError
from ..lang import parse
from .tree import Tree


@dataclass
class ChallengeProgress:
    attempts: int = 0
    solved: bool = False
    attempts_to_first_solve: Optional[int] = None


@dataclass
class Session:
    node_ids: list[str]
    per_challenge: dict[str, ChallengeProgress] = field(default_factory=dict)

    @property
    def solved_count(self) -> int:
        return sum(1 for p in self.per_challenge.values() if p.solved)


def challenge_names(tree: Tree) -> list[str]:
    """Secret check commands declared by the root model, in source order."""
    try:
        model = parse(tree.root.code)
    except Exception as e:
        raise TreeFormatError(
            "malformed", f"root model code does not parse: "
            f"{getattr(e, 'message', e)}")
    return [c.name for c in split(model).command_index
            if c.secret and c.kind == "check"]


def extract_sessions(tree: Tree,
                     challenges: Optional[list[str]] = None) -> list[Session]:
    """One session per leaf; root-only trees have no sessions."""
    if challenges is None:
        challenges = challenge_names(tree)
    sessions = []
    for leaf in tree.leaves():
        if leaf.id == tree.root_id:
            continue
        chain = tree.path_from_root(leaf.id)[1:]   # root excluded
        per: dict[str, ChallengeProgress] = {
            c: ChallengeProgress() for c in challenges}
        for node in chain:
            if node.command not in per:
                continue
            p = per[node.command]
            p.attempts += 1
            if node.result == "unsat" and not p.solved:
                p.solved = True
                p.attempts_to_first_solve = p.attempts
        sessions.append(Session(node_ids=[n.id for n in chain],
                                per_challenge=per))
    return sessions
