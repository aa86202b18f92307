"""Hand-rolled lexer for MiniAlloy source text.

Comments (``//``, ``--``, ``/* */``) are skipped, with one exception: a line
whose content after leading whitespace is exactly ``//SECRET`` becomes a
SECRET_MARKER token so the parser can flag the next paragraph as secret.
The match is case-sensitive and admits no interior or trailing characters
(a single trailing carriage return is tolerated for CRLF files); anything
else is an ordinary comment.
"""

from __future__ import annotations

from ..errors import CodeTooLargeError, LexError
from .tokens import KEYWORDS, T, Token, UNSUPPORTED_KEYWORDS

DEFAULT_MAX_SOURCE_BYTES = 64 * 1024

_SINGLE = {
    "{": T.LBRACE,
    "}": T.RBRACE,
    "[": T.LBRACKET,
    "]": T.RBRACKET,
    "(": T.LPAREN,
    ")": T.RPAREN,
    ",": T.COMMA,
    ".": T.DOT,
    "|": T.BAR,
    "+": T.PLUS,
    "-": T.MINUS,
    "&": T.AMP,
    "~": T.TILDE,
    "^": T.CARET,
    "*": T.STAR,
    "=": T.EQ,
    "!": T.BANG,
    "#": T.HASH,
    "<": T.LT,
    ">": T.GT,
    ":": T.COLON,
}


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_ident_char(c: str) -> bool:
    return c.isalnum() or c == "_"


def tokenize(text: str, max_bytes: int = DEFAULT_MAX_SOURCE_BYTES) -> list[Token]:
    """Lex ``text`` into a token list ending with an EOF token.

    Raises LexError on illegal characters or unterminated block comments and
    CodeTooLargeError when the UTF-8 size exceeds ``max_bytes``.
    """
    if len(text.encode("utf-8")) > max_bytes:
        raise CodeTooLargeError(
            f"source is larger than the configured maximum of {max_bytes} bytes")

    toks: list[Token] = []
    i = 0
    n = len(text)
    line_start = 0  # offset of the first char of the current line

    while i < n:
        c = text[i]

        if c == "\n":
            line_start = i + 1
            i += 1
            continue
        if c.isspace():
            i += 1
            continue

        # comments
        if c == "/" and i + 1 < n and text[i + 1] == "/":
            eol = text.find("\n", i)
            if eol == -1:
                eol = n
            body = text[i + 2:eol]
            if body in ("SECRET", "SECRET\r") and text[line_start:i].strip() == "":
                toks.append(Token(T.SECRET_MARKER, text[i:eol], i, eol))
            i = eol
            continue
        if c == "-" and i + 1 < n and text[i + 1] == "-":
            eol = text.find("\n", i)
            i = n if eol == -1 else eol
            continue
        if c == "/" and i + 1 < n and text[i + 1] == "*":
            close = text.find("*/", i + 2)
            if close == -1:
                raise LexError("unterminated block comment", position=i)
            i = close + 2
            continue

        if _is_ident_start(c):
            j = i + 1
            while j < n and _is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            if word in KEYWORDS:
                toks.append(Token(KEYWORDS[word], word, i, j))
            elif word in UNSUPPORTED_KEYWORDS:
                toks.append(Token(T.UNSUPPORTED_KW, word, i, j))
            else:
                toks.append(Token(T.IDENT, word, i, j))
            i = j
            continue

        if c.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token(T.NUM, text[i:j], i, j))
            i = j
            continue

        # multi-char operators, longest match first
        two = text[i:i + 2]
        three = text[i:i + 3]
        if three == "<=>":
            toks.append(Token(T.IFF_SYM, three, i, i + 3))
            i += 3
            continue
        if two == "=>":
            toks.append(Token(T.IMPLIES_SYM, two, i, i + 2))
            i += 2
            continue
        if two == "!=":
            toks.append(Token(T.NEQ, two, i, i + 2))
            i += 2
            continue
        if two == "&&":
            toks.append(Token(T.AMPAMP, two, i, i + 2))
            i += 2
            continue
        if two == "||":
            toks.append(Token(T.BARBAR, two, i, i + 2))
            i += 2
            continue
        if two == "->":
            toks.append(Token(T.ARROW, two, i, i + 2))
            i += 2
            continue
        if two == "++":
            toks.append(Token(T.PLUSPLUS, two, i, i + 2))
            i += 2
            continue
        if two == "<:":
            toks.append(Token(T.DOMRESTR, two, i, i + 2))
            i += 2
            continue
        if two == ":>":
            toks.append(Token(T.RANRESTR, two, i, i + 2))
            i += 2
            continue

        if c in _SINGLE:
            toks.append(Token(_SINGLE[c], c, i, i + 1))
            i += 1
            continue

        raise LexError(f"illegal character {c!r}", position=i)

    toks.append(Token(T.EOF, "", n, n))
    return toks
