"""AST node types for MiniAlloy models.

Nodes are plain dataclasses.  Source spans and resolver annotations are
excluded from equality so that two parses of the same text compare equal
even when byte offsets differ (the round-trip property relies on this).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Span = tuple[int, int]


def _meta(default=None):
    return field(default=default, compare=False, repr=False)


# --- expressions -------------------------------------------------------------

@dataclass
class NameExpr:
    """Reference to a sig or field; ``ref`` is filled in by the resolver."""
    name: str
    span: Optional[Span] = _meta()
    ref: Optional[str] = _meta()       # "sig" | "field"
    arity: Optional[int] = _meta()


@dataclass
class VarExpr:
    name: str
    span: Optional[Span] = _meta()
    arity: Optional[int] = _meta()


@dataclass
class UnivExpr:
    span: Optional[Span] = _meta()
    arity: Optional[int] = _meta()


@dataclass
class IdenExpr:
    span: Optional[Span] = _meta()
    arity: Optional[int] = _meta()


@dataclass
class NoneExpr:
    span: Optional[Span] = _meta()
    arity: Optional[int] = _meta()


@dataclass
class UnaryExpr:
    op: str                 # "~" | "^" | "*"
    e: "ExprNode"
    span: Optional[Span] = _meta()
    arity: Optional[int] = _meta()


@dataclass
class BinExpr:
    op: str                 # "+" | "-" | "&" | "->" | "."
    l: "ExprNode"
    r: "ExprNode"
    span: Optional[Span] = _meta()
    arity: Optional[int] = _meta()


ExprNode = Union[NameExpr, VarExpr, UnivExpr, IdenExpr, NoneExpr, UnaryExpr, BinExpr]


# --- formulas ----------------------------------------------------------------

@dataclass
class ConstFormula:
    """True/false literal; the parse of an empty block is ConstFormula(True)."""
    value: bool
    span: Optional[Span] = _meta()


@dataclass
class Quant:
    kind: str               # "all" | "some" | "no" | "lone" | "one"
    decls: list[tuple[str, ExprNode]]
    body: "FormulaNode"
    span: Optional[Span] = _meta()


@dataclass
class BinFormula:
    op: str                 # "and" | "or" | "implies" | "iff"
    l: "FormulaNode"
    r: "FormulaNode"
    span: Optional[Span] = _meta()


@dataclass
class NotFormula:
    f: "FormulaNode"
    span: Optional[Span] = _meta()


@dataclass
class Compare:
    op: str                 # "in" | "eq" | "neq" | "notin"
    l: ExprNode
    r: ExprNode
    span: Optional[Span] = _meta()


@dataclass
class MultFormula:
    kind: str               # "some" | "no" | "lone" | "one"
    e: ExprNode
    span: Optional[Span] = _meta()


@dataclass
class PredCall:
    name: str
    args: list[ExprNode]
    span: Optional[Span] = _meta()


FormulaNode = Union[ConstFormula, Quant, BinFormula, NotFormula, Compare,
                    MultFormula, PredCall]


# --- paragraphs --------------------------------------------------------------

@dataclass
class FieldDecl:
    name: str
    cols: list[str]                        # column sigs beyond the owner (1 or 2)
    range_mult: Optional[str]              # arity-2 fields only
    arrow_mult: Optional[tuple[str, str]]  # arity-3 fields only
    span: Optional[Span] = _meta()


@dataclass
class SigDecl:
    name: str
    is_abstract: bool
    mult: str                              # "set" | "one" | "lone" | "some"
    parent: Optional[str]
    fields: list[FieldDecl]
    span: Optional[Span] = _meta()


@dataclass
class PredDecl:
    name: str
    params: list[tuple[str, ExprNode]]
    body: FormulaNode
    span: Optional[Span] = _meta()


@dataclass
class ScopeDecl:
    """Command scope; ``default`` is 3 when no ``for`` clause was written."""
    default: int
    overrides: list[tuple[str, int, bool]]   # (sig, bound, exactly)
    span: Optional[Span] = _meta()


@dataclass
class Command:
    kind: str                              # "run" | "check"
    name: str
    target_name: Optional[str]             # pred/assert reference, or None
    body: Optional[FormulaNode]            # inline block, or None
    scope: ScopeDecl
    secret: bool = False
    span: Optional[Span] = _meta()


ParagraphBody = Union[list[SigDecl], FormulaNode, PredDecl, Command]


@dataclass
class Paragraph:
    kind: str            # "sig" | "fact" | "pred" | "assert" | "run" | "check"
    name: str
    secret: bool
    body: ParagraphBody
    span: Optional[Span] = _meta()
    marker_span: Optional[Span] = _meta()


@dataclass
class SourceModel:
    text: str = field(compare=False, repr=False, default="")
    paragraphs: list[Paragraph] = field(default_factory=list)

    def paragraph_source(self, p: Paragraph) -> str:
        """Source slice of a paragraph including its //SECRET marker line."""
        if p.marker_span:
            return self.text[p.marker_span[0]:p.marker_span[1]] + "\n" + \
                self.text[p.span[0]:p.span[1]]
        return self.text[p.span[0]:p.span[1]]


def walk_formula(f: FormulaNode):
    """Yield every formula and expression node reachable from ``f``."""
    yield f
    if isinstance(f, Quant):
        for _, e in f.decls:
            yield from walk_expr(e)
        yield from walk_formula(f.body)
    elif isinstance(f, BinFormula):
        yield from walk_formula(f.l)
        yield from walk_formula(f.r)
    elif isinstance(f, NotFormula):
        yield from walk_formula(f.f)
    elif isinstance(f, Compare):
        yield from walk_expr(f.l)
        yield from walk_expr(f.r)
    elif isinstance(f, MultFormula):
        yield from walk_expr(f.e)
    elif isinstance(f, PredCall):
        for a in f.args:
            yield from walk_expr(a)


def walk_expr(e: ExprNode):
    yield e
    if isinstance(e, UnaryExpr):
        yield from walk_expr(e.e)
    elif isinstance(e, BinExpr):
        yield from walk_expr(e.l)
        yield from walk_expr(e.r)
