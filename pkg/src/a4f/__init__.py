"""a4f: edit, analyze, share, and auto-grade MiniAlloy models.

Subpackages:
  lang       MiniAlloy lexer/parser/resolver
  finder     bounded model finding (bounds, translation, SAT, oracle)
  challenge  secret paragraphs: split/merge/grade
  repo       permalink + derivation-tree persistence
  service    HTTP API
  mining     derivation-tree analytics CLI
"""

__version__ = "0.1.0"
