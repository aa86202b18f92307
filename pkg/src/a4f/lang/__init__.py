"""MiniAlloy language front end: lexer, parser, AST, resolver."""

from .ast import (BinExpr, BinFormula, Command, Compare, ConstFormula, FieldDecl,
                  IdenExpr, MultFormula, NameExpr, NoneExpr, NotFormula, Paragraph,
                  ParagraphBody, PredCall, PredDecl, Quant, ScopeDecl, SigDecl,
                  SourceModel, UnaryExpr, UnivExpr, VarExpr)
from .lexer import DEFAULT_MAX_SOURCE_BYTES, tokenize
from .parser import parse
from .resolver import (CommandInfo, FieldInfo, PredInfo, ResolvedModel, ScopeInfo,
                       SigInfo, resolve)

__all__ = [
    "parse", "tokenize", "resolve", "DEFAULT_MAX_SOURCE_BYTES",
    "SourceModel", "Paragraph", "ParagraphBody", "SigDecl", "FieldDecl",
    "PredDecl", "Command", "ScopeDecl",
    "NameExpr", "VarExpr", "UnivExpr", "IdenExpr", "NoneExpr", "UnaryExpr",
    "BinExpr", "ConstFormula", "Quant", "BinFormula", "NotFormula", "Compare",
    "MultFormula", "PredCall",
    "ResolvedModel", "SigInfo", "FieldInfo", "PredInfo", "CommandInfo", "ScopeInfo",
]
