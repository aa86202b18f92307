"""Token kinds and the token record produced by the MiniAlloy lexer."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto


class T(Enum):
    # structural keywords
    SIG = auto()
    ABSTRACT = auto()
    EXTENDS = auto()
    FACT = auto()
    PRED = auto()
    ASSERT = auto()
    RUN = auto()
    CHECK = auto()
    FOR = auto()
    BUT = auto()
    EXACTLY = auto()

    # multiplicities / quantifiers
    ONE = auto()
    LONE = auto()
    SOME = auto()
    NO = auto()
    ALL = auto()
    SET = auto()

    # logic keywords
    AND = auto()
    OR = auto()
    IMPLIES = auto()
    IFF = auto()
    NOT = auto()
    IN = auto()

    # constant relations
    UNIV = auto()
    IDEN = auto()
    NONE = auto()

    # reserved by full Alloy but unsupported here; kept as distinct tokens so
    # the parser can reject them with a message naming the construct
    UNSUPPORTED_KW = auto()

    IDENT = auto()
    NUM = auto()

    LBRACE = auto()
    RBRACE = auto()
    LBRACKET = auto()
    RBRACKET = auto()
    LPAREN = auto()
    RPAREN = auto()
    COLON = auto()
    COMMA = auto()
    DOT = auto()
    BAR = auto()

    PLUS = auto()
    MINUS = auto()
    AMP = auto()
    ARROW = auto()
    TILDE = auto()
    CARET = auto()
    STAR = auto()

    EQ = auto()        # =
    NEQ = auto()       # !=
    BANG = auto()      # !
    AMPAMP = auto()    # &&
    BARBAR = auto()    # ||
    IMPLIES_SYM = auto()   # =>
    IFF_SYM = auto()       # <=>

    # tokens recognized only to produce "unsupported construct" errors
    HASH = auto()      # cardinality
    PLUSPLUS = auto()  # override
    DOMRESTR = auto()  # <:
    RANRESTR = auto()  # :>
    LT = auto()
    GT = auto()

    SECRET_MARKER = auto()
    EOF = auto()


KEYWORDS: dict[str, T] = {
    "sig": T.SIG,
    "abstract": T.ABSTRACT,
    "extends": T.EXTENDS,
    "fact": T.FACT,
    "pred": T.PRED,
    "assert": T.ASSERT,
    "run": T.RUN,
    "check": T.CHECK,
    "for": T.FOR,
    "but": T.BUT,
    "exactly": T.EXACTLY,
    "one": T.ONE,
    "lone": T.LONE,
    "some": T.SOME,
    "no": T.NO,
    "all": T.ALL,
    "set": T.SET,
    "and": T.AND,
    "or": T.OR,
    "implies": T.IMPLIES,
    "iff": T.IFF,
    "not": T.NOT,
    "in": T.IN,
    "univ": T.UNIV,
    "iden": T.IDEN,
    "none": T.NONE,
}

# Full-Alloy words outside the supported subset.  Each maps to the construct
# name used in the rejection message.
UNSUPPORTED_KEYWORDS: dict[str, str] = {
    "let": "let expression",
    "fun": "function declaration",
    "open": "module import",
    "module": "module header",
    "disj": "disj quantifier",
    "else": "implies-else",
    "this": "this reference",
    "Int": "integers",
    "int": "integers",
    "String": "strings",
    "seq": "sequences",
    "sum": "integer aggregation",
    "enum": "enum declaration",
}


@dataclass
class Token:
    kind: T
    text: str
    start: int
    end: int

    def __repr__(self) -> str:
        return f"Token({self.kind.name}, {self.text!r}, {self.start}:{self.end})"
