"""a4f-mine: offline analytics over exported derivation trees.

    a4f-mine stats --tree <file> [--tree <file> ...] [--format json|csv|text]
    a4f-mine stats --url <service>/api/models/<token>/tree [--out <file>]

Exit codes: 0 on success, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.error
import urllib.request
from typing import Optional

from ..errors import A4FError, TreeFormatError
from .stats import compute_stats, report
from .tree import parse_tree


def _fetch_url(url: str) -> str:
    with urllib.request.urlopen(url, timeout=30) as resp:
        return resp.read().decode("utf-8")


def main(argv: Optional[list[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="a4f-mine",
                                 description="derivation-tree analytics")
    sub = ap.add_subparsers(dest="cmd", required=True)
    st = sub.add_parser("stats", help="challenge-solving statistics per link")
    st.add_argument("--tree", action="append", default=[],
                    help="derivation-tree JSON file (repeatable)")
    st.add_argument("--url", action="append", default=[],
                    help="service tree endpoint URL (repeatable)")
    st.add_argument("--format", choices=("json", "csv", "text"), default="text")
    st.add_argument("--out", default=None, help="write the report to a file")
    args = ap.parse_args(argv)

    documents: list[str] = []
    try:
        for path in args.tree:
            if path == "-":
                documents.append(sys.stdin.read())
            else:
                with open(path, "r", encoding="utf-8") as fh:
                    documents.append(fh.read())
        for url in args.url:
            documents.append(_fetch_url(url))
    except (OSError, urllib.error.URLError) as e:
        print(f"a4f-mine: cannot read input: {e}", file=sys.stderr)
        return 2
    if not documents:
        print("a4f-mine: need at least one --tree or --url", file=sys.stderr)
        return 2

    stats = []
    for doc in documents:
        try:
            tree = parse_tree(doc)
            stats.append(compute_stats(tree))
        except TreeFormatError as e:
            print(f"a4f-mine: {e.kind}: {e.message}", file=sys.stderr)
            return 2
        except A4FError as e:
            print(f"a4f-mine: {e.message}", file=sys.stderr)
            return 2

    text = report(stats, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
