"""Derivation-tree analytics: parsing, session extraction, statistics."""

from .sessions import ChallengeProgress, Session, challenge_names, extract_sessions
from .stats import LinkStats, classify, compute_stats, report
from .tree import Tree, TreeNode, parse_tree

__all__ = ["parse_tree", "Tree", "TreeNode",
           "extract_sessions", "Session", "ChallengeProgress", "challenge_names",
           "compute_stats", "LinkStats", "classify", "report"]
