from __future__ import annotations

import pytest

from a4f.errors import CodeTooLargeError, LexError
from a4f.lang.lexer import tokenize
from a4f.lang.tokens import T


def kinds(text):
    return [t.kind for t in tokenize(text)][:-1]   # drop EOF


def test_minimal_sig_declaration():
    assert kinds("sig A {}") == [T.SIG, T.IDENT, T.LBRACE, T.RBRACE]


def test_secret_marker_before_check():
    toks = tokenize("//SECRET\ncheck Inv2OK for 3")
    assert [t.kind for t in toks][:-1] == \
        [T.SECRET_MARKER, T.CHECK, T.IDENT, T.FOR, T.NUM]
    assert toks[2].text == "Inv2OK"
    assert toks[4].text == "3"


def test_illegal_character_position():
    with pytest.raises(LexError) as e:
        tokenize("pred P { @ }")
    assert e.value.position == "pred P { ".index("@")


def test_comments_are_skipped():
    assert kinds("sig A {} // trailing\n-- dashed\n/* block\nstill */ sig B {}") \
        == [T.SIG, T.IDENT, T.LBRACE, T.RBRACE, T.SIG, T.IDENT, T.LBRACE, T.RBRACE]


def test_unterminated_block_comment():
    with pytest.raises(LexError):
        tokenize("sig A {} /* never closed")


@pytest.mark.parametrize("line", [
    "//SECRET ",          # trailing space
    "// SECRET",          # interior space
    "//secret",           # case
    "//SECRETS",          # longer word
    "sig A {} //SECRET",  # not alone on its line
])
def test_near_miss_markers_are_plain_comments(line):
    toks = tokenize(line + "\nsig B {}")
    assert all(t.kind is not T.SECRET_MARKER for t in toks)


def test_marker_allows_leading_whitespace():
    toks = tokenize("   \t//SECRET\nsig A {}")
    assert toks[0].kind is T.SECRET_MARKER


def test_spans_cover_source():
    text = "sig  A { r: set A }"
    for tok in tokenize(text)[:-1]:
        assert text[tok.start:tok.end] == tok.text


def test_operators():
    assert kinds("a => b <=> c != d -> e") == \
        [T.IDENT, T.IMPLIES_SYM, T.IDENT, T.IFF_SYM, T.IDENT, T.NEQ,
         T.IDENT, T.ARROW, T.IDENT]


def test_source_size_cap():
    with pytest.raises(CodeTooLargeError):
        tokenize("x" * 100, max_bytes=64)
    tokenize("x" * 64, max_bytes=64)
