"""Parsing and validation of derivation-tree documents."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from ..errors import TreeFormatError


@dataclass
class TreeNode:
    id: str
    parent: Optional[str]
    time: str
    code: str
    command: Optional[str]
    result: Optional[str]


@dataclass
class Tree:
    root_id: str
    nodes: dict[str, TreeNode]
    children: dict[str, list[str]] = field(default_factory=dict)

    @property
    def root(self) -> TreeNode:
        return self.nodes[self.root_id]

    def leaves(self) -> list[TreeNode]:
        return [n for nid, n in self.nodes.items() if not self.children.get(nid)]

    def path_from_root(self, node_id: str) -> list[TreeNode]:
        """Ancestor chain root..node inclusive."""
        chain = []
        cur: Optional[str] = node_id
        while cur is not None:
            node = self.nodes[cur]
            chain.append(node)
            cur = node.parent
        chain.reverse()
        return chain


def parse_tree(document) -> Tree:
    """Validate a derivation-tree document (dict or JSON string).

    Raises TreeFormatError with kind one of: malformed, missing-root,
    orphan-parent, cycle, duplicate-id.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise TreeFormatError("malformed", f"document is not valid JSON: {e}")
    if not isinstance(document, dict):
        raise TreeFormatError("malformed", "document must be a JSON object")
    root_id = document.get("root")
    raw_nodes = document.get("nodes")
    if not isinstance(root_id, str) or not isinstance(raw_nodes, list):
        raise TreeFormatError("malformed",
                              "document needs a root id and a nodes array")
    if not raw_nodes:
        raise TreeFormatError("missing-root", "nodes array is empty")

    nodes: dict[str, TreeNode] = {}
    for raw in raw_nodes:
        if not isinstance(raw, dict) or "id" not in raw:
            raise TreeFormatError("malformed", "every node needs an id")
        nid = raw["id"]
        if nid in nodes:
            raise TreeFormatError("duplicate-id", f"node id {nid!r} repeats")
        nodes[nid] = TreeNode(
            id=nid, parent=raw.get("parent"), time=raw.get("time", ""),
            code=raw.get("code", ""), command=raw.get("command"),
            result=raw.get("result"))

    if root_id not in nodes:
        raise TreeFormatError("missing-root",
                              f"root {root_id!r} is not among the nodes")
    if nodes[root_id].parent is not None:
        raise TreeFormatError("malformed", "the root node must have no parent")

    children: dict[str, list[str]] = {}
    for nid, node in nodes.items():
        if nid == root_id:
            continue
        if node.parent is None:
            raise TreeFormatError("malformed",
                                  f"non-root node {nid!r} has no parent")
        if node.parent not in nodes:
            raise TreeFormatError("orphan-parent",
                                  f"node {nid!r} references missing parent "
                                  f"{node.parent!r}")
        children.setdefault(node.parent, []).append(nid)

    # every node must reach the root without revisiting anything
    for nid in nodes:
        seen = set()
        cur: Optional[str] = nid
        while cur is not None:
            if cur in seen:
                raise TreeFormatError("cycle",
                                      f"parent chain of {nid!r} contains a cycle")
            seen.add(cur)
            cur = nodes[cur].parent
        if root_id not in seen:
            raise TreeFormatError("orphan-parent",
                                  f"node {nid!r} does not descend from the root")

    for kids in children.values():
        kids.sort(key=lambda k: (nodes[k].time, k))
    return Tree(root_id=root_id, nodes=nodes, children=children)
