"""Per-link challenge-solving statistics and report rendering.

Each session is classified by how many of the link's challenges it solved:
all of them, some, or none (a link without challenges classifies every
session as none).  The text format renders one cumulative stacked bar per
link, all/some/none left to right.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional

from ..errors import A4FError
from .sessions import Session, challenge_names, extract_sessions
from .tree import Tree

_BAR_WIDTH = 40
_GLYPHS = ("#", "+", ".")      # all / some / none segments


@dataclass
class LinkStats:
    link: str
    challenge_count: int
    session_count: int
    all_solved: int
    some_solved: int
    none_solved: int

    def as_dict(self) -> dict:
        return {"link": self.link, "challenges": self.challenge_count,
                "sessions": self.session_count, "all": self.all_solved,
                "some": self.some_solved, "none": self.none_solved}


def classify(session: Session, challenge_count: int) -> str:
    solved = session.solved_count
    if challenge_count > 0 and solved == challenge_count:
        return "all"
    if solved == 0:
        return "none"
    return "some"


def compute_stats(tree: Tree, challenges: Optional[list[str]] = None) -> LinkStats:
    if challenges is None:
        challenges = challenge_names(tree)
    known = set(challenges)
    declared = set(challenge_names(tree))
    unknown = known - declared
    if unknown:
        raise A4FError(f"unknown challenge name(s): {sorted(unknown)}")
    sessions = extract_sessions(tree, challenges)
    counts = {"all": 0, "some": 0, "none": 0}
    for s in sessions:
        counts[classify(s, len(challenges))] += 1
    return LinkStats(link=tree.root_id, challenge_count=len(challenges),
                     session_count=len(sessions), all_solved=counts["all"],
                     some_solved=counts["some"], none_solved=counts["none"])


def report(stats: list[LinkStats], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([s.as_dict() for s in stats], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["link", "challenges", "sessions", "all", "some", "none"])
        for s in stats:
            w.writerow([s.link, s.challenge_count, s.session_count,
                        s.all_solved, s.some_solved, s.none_solved])
        return buf.getvalue()
    if fmt == "text":
        lines = []
        for s in stats:
            lines.append(_text_bar(s))
        return "\n".join(lines) + "\n"
    raise A4FError(f"unknown report format {fmt!r}")


def _text_bar(s: LinkStats) -> str:
    total = s.session_count
    segments = []
    if total:
        parts = [s.all_solved, s.some_solved, s.none_solved]
        cum = 0
        prev = 0
        for glyph, p in zip(_GLYPHS, parts):
            cum += p
            boundary = round(_BAR_WIDTH * cum / total)
            segments.append(glyph * (boundary - prev))
            prev = boundary
    bar = "".join(segments).ljust(_BAR_WIDTH)
    return (f"{s.link} ({s.challenge_count}) |{bar}| "
            f"{s.all_solved} all / {s.some_solved} some / "
            f"{s.none_solved} none ({total} sessions)")
