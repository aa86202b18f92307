"""Exception hierarchy shared across the a4f packages.

Errors that point at a place in source text carry a byte offset (``position``)
and, where useful, a full byte span.  ``line_col`` converts an offset into a
human-friendly 1-based (line, column) pair.
"""

from __future__ import annotations

from typing import Optional


def line_col(text: str, position: int) -> tuple[int, int]:
    """1-based (line, column) of a byte/char offset in ``text``."""
    position = max(0, min(position, len(text)))
    line = text.count("\n", 0, position) + 1
    last_nl = text.rfind("\n", 0, position)
    return line, position - last_nl


class A4FError(Exception):
    """Base for all errors raised by this package."""

    code = "error"

    def __init__(self, message: str, position: Optional[int] = None,
                 span: Optional[tuple[int, int]] = None):
        super().__init__(message)
        self.message = message
        self.position = position if position is not None else (span[0] if span else None)
        self.span = span

    def __str__(self) -> str:
        if self.position is not None:
            return f"{self.message} (at offset {self.position})"
        return self.message


# --- language front end ---------------------------------------------------

class LexError(A4FError):
    code = "lex"


class ParseError(A4FError):
    code = "parse"

    def __init__(self, message: str, position: Optional[int] = None,
                 span: Optional[tuple[int, int]] = None,
                 expected: Optional[list[str]] = None):
        super().__init__(message, position, span)
        self.expected = expected or []


class CodeTooLargeError(A4FError):
    code = "code-too-large"


class ResolveError(A4FError):
    code = "resolve"


class UnknownNameError(ResolveError):
    code = "unknown-name"


class ArityMismatchError(ResolveError):
    code = "arity-mismatch"


class DuplicateNameError(ResolveError):
    code = "duplicate-name"


class CyclicExtendsError(ResolveError):
    code = "cyclic-extends"


class RecursivePredicateError(ResolveError):
    code = "recursive-predicate"


class InvalidScopeError(ResolveError):
    code = "invalid-scope"


# --- model finder -----------------------------------------------------------

class ScopeTooLargeError(A4FError):
    code = "scope-too-large"


class OracleTooLargeError(A4FError):
    code = "oracle-too-large"


class BudgetExceeded(A4FError):
    """Raised internally when a solve/translate budget runs out.

    Callers convert this into a ``limit`` outcome; it never escapes the
    public solve API.
    """

    code = "resource-limit"


# --- challenges -------------------------------------------------------------

class SecretNameClashError(A4FError):
    code = "secret-name-clash"


class UnknownCommandError(A4FError):
    code = "unknown-command"


# --- repository / service ---------------------------------------------------

class NotFoundError(A4FError):
    code = "not-found"


class ForbiddenError(A4FError):
    code = "forbidden"


class StoreCorruptError(A4FError):
    code = "store-corrupt"


class MalformedInputError(A4FError):
    """Bad theme/layout/instance documents supplied by a client."""

    code = "malformed-input"


# --- mining -----------------------------------------------------------------

class TreeFormatError(A4FError):
    """Malformed derivation-tree document; ``kind`` names the defect."""

    code = "tree-format"

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind
