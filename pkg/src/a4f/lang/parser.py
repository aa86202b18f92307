"""Recursive-descent parser producing a SourceModel from MiniAlloy text.

Precedence, loosest to tightest:
  formulas:    quantifier body | `or` | `iff` | `implies` (right-assoc) | `and` | `not`
  expressions: `+` `-` | `&` | `->` | `.` and box join | unary `~ ^ *`

Constructs of full Alloy outside the subset (cardinality, let, functions,
imports, comprehensions, ...) are rejected with an error naming them.
"""

from __future__ import annotations

from typing import Optional

from ..errors import ParseError
from . import ast
from .lexer import DEFAULT_MAX_SOURCE_BYTES, tokenize
from .tokens import T, Token, UNSUPPORTED_KEYWORDS


def _unsupported_name(tok: Token) -> str:
    return UNSUPPORTED_KEYWORDS.get(tok.text, f"reserved word {tok.text!r}")

_MULT_TOKENS = {T.ONE: "one", T.LONE: "lone", T.SOME: "some", T.SET: "set"}
_QUANT_TOKENS = {T.ALL: "all", T.SOME: "some", T.NO: "no", T.LONE: "lone", T.ONE: "one"}
_MULT_FORMULA_TOKENS = {T.SOME: "some", T.NO: "no", T.LONE: "lone", T.ONE: "one"}

_MAX_DEPTH = 200


class _Parser:
    def __init__(self, text: str, tokens: list[Token]):
        self.text = text
        self.toks = tokens
        self.pos = 0
        self.depth = 0
        self.anon_counters = {"fact": 0, "run": 0, "check": 0}

    # --- token plumbing ---

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def at(self, *kinds: T) -> bool:
        return self.toks[self.pos].kind in kinds

    def advance(self) -> Token:
        t = self.toks[self.pos]
        if t.kind is not T.EOF:
            self.pos += 1
        return t

    def expect(self, kind: T, what: str) -> Token:
        t = self.peek()
        if t.kind is not kind:
            self.fail(f"expected {what}", expected=[what])
        return self.advance()

    def fail(self, message: str, expected: Optional[list[str]] = None):
        t = self.peek()
        if t.kind is T.UNSUPPORTED_KW:
            raise ParseError(
                f"unsupported construct: {_unsupported_name(t)}",
                position=t.start, span=(t.start, t.end))
        got = t.text or "end of input"
        raise ParseError(f"{message}, got {got!r}", position=t.start,
                         span=(t.start, t.end), expected=expected)

    def check_unsupported(self):
        t = self.peek()
        if t.kind is T.UNSUPPORTED_KW:
            raise ParseError(
                f"unsupported construct: {_unsupported_name(t)}",
                position=t.start, span=(t.start, t.end))
        if t.kind in (T.HASH, T.PLUSPLUS, T.DOMRESTR, T.RANRESTR, T.LT, T.GT):
            names = {T.HASH: "cardinality '#'", T.PLUSPLUS: "override '++'",
                     T.DOMRESTR: "domain restriction '<:'",
                     T.RANRESTR: "range restriction ':>'",
                     T.LT: "integer comparison", T.GT: "integer comparison"}
            raise ParseError(f"unsupported construct: {names[t.kind]}",
                             position=t.start, span=(t.start, t.end))

    def _enter(self):
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise ParseError("nesting too deep", position=self.peek().start)

    def _leave(self):
        self.depth -= 1

    # --- paragraphs ---

    def parse_model(self) -> ast.SourceModel:
        paragraphs: list[ast.Paragraph] = []
        while not self.at(T.EOF):
            marker: Optional[Token] = None
            if self.at(T.SECRET_MARKER):
                marker = self.advance()
                nxt = self.peek()
                between = self.text[marker.end:nxt.start]
                if nxt.kind is T.EOF or nxt.kind is T.SECRET_MARKER \
                        or between.strip() != "":
                    raise ParseError(
                        "//SECRET marker must be immediately followed by a paragraph",
                        position=marker.start, span=(marker.start, marker.end))
            p = self.parse_paragraph(secret=marker is not None)
            if marker is not None:
                if p.span[0] < marker.end:
                    raise ParseError(
                        "//SECRET marker must be on its own line before a paragraph",
                        position=marker.start)
                p.marker_span = (marker.start, marker.end)
            paragraphs.append(p)
        return ast.SourceModel(text=self.text, paragraphs=paragraphs)

    def parse_paragraph(self, secret: bool) -> ast.Paragraph:
        self.check_unsupported()
        t = self.peek()
        if t.kind in (T.ABSTRACT, T.SIG) or \
                (t.kind in _MULT_TOKENS and self.peek(1).kind in (T.SIG, T.ABSTRACT)):
            return self.parse_sig_paragraph(secret)
        if t.kind is T.FACT:
            return self.parse_fact(secret)
        if t.kind is T.PRED:
            return self.parse_pred(secret)
        if t.kind is T.ASSERT:
            return self.parse_assert(secret)
        if t.kind in (T.RUN, T.CHECK):
            return self.parse_command(secret)
        self.fail("expected a paragraph (sig, fact, pred, assert, run or check)")

    def parse_sig_paragraph(self, secret: bool) -> ast.Paragraph:
        start = self.peek().start
        is_abstract = False
        mult = "set"
        while True:
            if self.at(T.ABSTRACT):
                self.advance()
                is_abstract = True
            elif self.peek().kind in _MULT_TOKENS and self.peek(1).kind in (T.SIG, T.ABSTRACT):
                mult = _MULT_TOKENS[self.advance().kind]
            else:
                break
        self.expect(T.SIG, "'sig'")
        names = [self.expect(T.IDENT, "signature name").text]
        while self.at(T.COMMA):
            self.advance()
            names.append(self.expect(T.IDENT, "signature name").text)
        parent = None
        if self.at(T.EXTENDS):
            self.advance()
            parent = self.expect(T.IDENT, "parent signature name").text
        if self.at(T.IN):
            self.fail("unsupported construct: subset signature")
        self.expect(T.LBRACE, "'{'")
        fields: list[ast.FieldDecl] = []
        if not self.at(T.RBRACE):
            fields.append(self.parse_field_decl())
            while self.at(T.COMMA):
                self.advance()
                fields.append(self.parse_field_decl())
        end = self.expect(T.RBRACE, "'}'").end
        decls = [ast.SigDecl(name=n, is_abstract=is_abstract, mult=mult,
                             parent=parent, fields=list(fields) if i == 0 else
                             [ast.FieldDecl(f.name, f.cols, f.range_mult, f.arrow_mult, span=f.span)
                              for f in fields],
                             span=(start, end))
                 for i, n in enumerate(names)]
        return ast.Paragraph(kind="sig", name=names[0], secret=secret,
                             body=decls, span=(start, end))

    def parse_field_decl(self) -> ast.FieldDecl:
        self.check_unsupported()
        name_tok = self.expect(T.IDENT, "field name")
        self.expect(T.COLON, "':'")
        self.check_unsupported()
        lead_mult = None
        if self.peek().kind in _MULT_TOKENS:
            lead_mult = _MULT_TOKENS[self.advance().kind]
        first = self.expect(T.IDENT, "signature name")
        if self.peek().kind in _MULT_TOKENS or self.at(T.ARROW):
            # ternary: A [m ->] [m] B
            if lead_mult is not None:
                raise ParseError(
                    "unsupported construct: multiplicity prefix on a ternary field "
                    "(only arrow multiplicities are allowed)",
                    position=name_tok.start)
            left = "set"
            right = "set"
            if self.peek().kind in _MULT_TOKENS:
                left = _MULT_TOKENS[self.advance().kind]
            self.expect(T.ARROW, "'->'")
            if self.peek().kind in _MULT_TOKENS:
                right = _MULT_TOKENS[self.advance().kind]
            second = self.expect(T.IDENT, "signature name")
            if self.at(T.ARROW):
                self.fail("unsupported construct: field arity above 3")
            return ast.FieldDecl(name=name_tok.text, cols=[first.text, second.text],
                                 range_mult=None, arrow_mult=(left, right),
                                 span=(name_tok.start, second.end))
        return ast.FieldDecl(name=name_tok.text, cols=[first.text],
                             range_mult=lead_mult or "one", arrow_mult=None,
                             span=(name_tok.start, first.end))

    def parse_fact(self, secret: bool) -> ast.Paragraph:
        start = self.advance().start       # 'fact'
        name = None
        if self.at(T.IDENT):
            name = self.advance().text
        body, end = self.parse_block()
        if name is None:
            name = f"fact${self.anon_counters['fact']}"
            self.anon_counters["fact"] += 1
        return ast.Paragraph(kind="fact", name=name, secret=secret, body=body,
                             span=(start, end))

    def parse_pred(self, secret: bool) -> ast.Paragraph:
        start = self.advance().start       # 'pred'
        name = self.expect(T.IDENT, "predicate name").text
        params: list[tuple[str, ast.ExprNode]] = []
        if self.at(T.LBRACKET):
            self.advance()
            if not self.at(T.RBRACKET):
                params.extend(self.parse_param_group())
                while self.at(T.COMMA):
                    self.advance()
                    params.extend(self.parse_param_group())
            self.expect(T.RBRACKET, "']'")
        if self.at(T.LPAREN):
            self.fail("expected '[' for predicate parameters")
        body, end = self.parse_block()
        return ast.Paragraph(kind="pred", name=name, secret=secret,
                             body=ast.PredDecl(name=name, params=params, body=body,
                                               span=(start, end)),
                             span=(start, end))

    def parse_param_group(self) -> list[tuple[str, ast.ExprNode]]:
        self.check_unsupported()
        names = [self.expect(T.IDENT, "parameter name").text]
        while self.at(T.COMMA) and self.peek(1).kind is T.IDENT and \
                self.peek(2).kind in (T.COMMA, T.COLON):
            self.advance()
            names.append(self.expect(T.IDENT, "parameter name").text)
        self.expect(T.COLON, "':'")
        ty = self.parse_expr()
        return [(n, ty) for n in names]

    def parse_assert(self, secret: bool) -> ast.Paragraph:
        start = self.advance().start       # 'assert'
        name = self.expect(T.IDENT, "assertion name").text
        body, end = self.parse_block()
        return ast.Paragraph(kind="assert", name=name, secret=secret, body=body,
                             span=(start, end))

    def parse_command(self, secret: bool) -> ast.Paragraph:
        kw = self.advance()                # 'run' | 'check'
        kind = "run" if kw.kind is T.RUN else "check"
        name: Optional[str] = None
        target: Optional[str] = None
        body: Optional[ast.FormulaNode] = None
        end = kw.end
        if self.at(T.IDENT):
            ident = self.advance()
            if self.at(T.LBRACE):
                name = ident.text          # named inline command
                body, end = self.parse_block()
            else:
                target = ident.text        # reference to a pred/assert
                name = ident.text
                end = ident.end
        elif self.at(T.LBRACE):
            body, end = self.parse_block()
        else:
            self.fail(f"expected a name or block after '{kind}'")
        scope, scope_end = self.parse_scope()
        end = scope_end or end
        if name is None:
            name = f"{kind}${self.anon_counters[kind]}"
            self.anon_counters[kind] += 1
        cmd = ast.Command(kind=kind, name=name, target_name=target, body=body,
                          scope=scope, secret=secret, span=(kw.start, end))
        return ast.Paragraph(kind=kind, name=name, secret=secret, body=cmd,
                             span=(kw.start, end))

    def parse_scope(self) -> tuple[ast.ScopeDecl, Optional[int]]:
        if not self.at(T.FOR):
            return ast.ScopeDecl(default=3, overrides=[]), None
        start = self.advance().start
        default = 3
        overrides: list[tuple[str, int, bool]] = []
        end: int

        def scope_item() -> tuple[str, int, bool, int]:
            exactly = False
            if self.at(T.EXACTLY):
                self.advance()
                exactly = True
            num = self.expect(T.NUM, "scope bound")
            sig_tok = self.expect(T.IDENT, "signature name")
            return sig_tok.text, int(num.text), exactly, sig_tok.end

        if self.at(T.NUM) and self.peek(1).kind is not T.IDENT:
            num = self.advance()
            default = int(num.text)
            if default < 1:
                raise ParseError("default scope must be at least 1",
                                 position=num.start)
            end = num.end
            if self.at(T.BUT):
                self.advance()
                sig, bound, exactly, end = scope_item()
                overrides.append((sig, bound, exactly))
                while self.at(T.COMMA):
                    self.advance()
                    sig, bound, exactly, end = scope_item()
                    overrides.append((sig, bound, exactly))
        else:
            sig, bound, exactly, end = scope_item()
            overrides.append((sig, bound, exactly))
            while self.at(T.COMMA):
                self.advance()
                sig, bound, exactly, end = scope_item()
                overrides.append((sig, bound, exactly))
        return ast.ScopeDecl(default=default, overrides=overrides,
                             span=(start, end)), end

    # --- formulas ---

    def parse_block(self) -> tuple[ast.FormulaNode, int]:
        """`{ formula* }`; the conjunction of its formulas, true when empty."""
        lb = self.expect(T.LBRACE, "'{'")
        formulas: list[ast.FormulaNode] = []
        while not self.at(T.RBRACE, T.EOF):
            formulas.append(self.parse_formula())
        end = self.expect(T.RBRACE, "'}'").end
        if not formulas:
            return ast.ConstFormula(True, span=(lb.start, end)), end
        f = formulas[0]
        for g in formulas[1:]:
            f = ast.BinFormula("and", f, g, span=(lb.start, end))
        return f, end

    def parse_formula(self) -> ast.FormulaNode:
        self._enter()
        try:
            return self.parse_or()
        finally:
            self._leave()

    def _quant_lookahead(self) -> bool:
        """After a quantifier keyword: IDENT (, IDENT)* ':' starts a decl."""
        i = 1
        if self.peek(i).kind is not T.IDENT:
            return False
        i += 1
        while self.peek(i).kind is T.COMMA and self.peek(i + 1).kind is T.IDENT:
            i += 2
        return self.peek(i).kind is T.COLON

    def parse_quantified(self) -> ast.FormulaNode:
        kw = self.advance()
        kind = _QUANT_TOKENS[kw.kind]
        decls: list[tuple[str, ast.ExprNode]] = []

        def decl_group():
            names = [self.expect(T.IDENT, "variable name").text]
            while self.at(T.COMMA) and self.peek(1).kind is T.IDENT and \
                    self.peek(2).kind in (T.COMMA, T.COLON):
                self.advance()
                names.append(self.advance().text)
            self.expect(T.COLON, "':'")
            e = self.parse_expr()
            for n in names:
                decls.append((n, e))

        decl_group()
        while self.at(T.COMMA):
            self.advance()
            decl_group()
        if self.at(T.BAR):
            self.advance()
            body = self.parse_formula()
            span_end = body.span[1] if body.span else kw.end
        elif self.at(T.LBRACE):
            body, span_end = self.parse_block()
        else:
            self.fail("expected '|' or a block after quantifier declarations")
        return ast.Quant(kind=kind, decls=decls, body=body,
                         span=(kw.start, span_end))

    def parse_or(self) -> ast.FormulaNode:
        f = self.parse_iff()
        while self.at(T.OR, T.BARBAR):
            self.advance()
            r = self.parse_iff()
            f = ast.BinFormula("or", f, r, span=_join(f, r))
        return f

    def parse_iff(self) -> ast.FormulaNode:
        f = self.parse_implies()
        while self.at(T.IFF, T.IFF_SYM):
            self.advance()
            r = self.parse_implies()
            f = ast.BinFormula("iff", f, r, span=_join(f, r))
        return f

    def parse_implies(self) -> ast.FormulaNode:
        f = self.parse_and()
        if self.at(T.IMPLIES, T.IMPLIES_SYM):
            self.advance()
            r = self.parse_implies()       # right-associative
            if self.at(T.UNSUPPORTED_KW) and self.peek().text == "else":
                self.fail("")
            return ast.BinFormula("implies", f, r, span=_join(f, r))
        return f

    def parse_and(self) -> ast.FormulaNode:
        f = self.parse_not()
        while self.at(T.AND, T.AMPAMP):
            self.advance()
            r = self.parse_not()
            f = ast.BinFormula("and", f, r, span=_join(f, r))
        return f

    def parse_not(self) -> ast.FormulaNode:
        if self.at(T.NOT) or (self.at(T.BANG) and self.peek(1).kind is not T.IN):
            kw = self.advance()
            f = self.parse_not()
            return ast.NotFormula(f, span=(kw.start, f.span[1] if f.span else kw.end))
        return self.parse_primary_formula()

    def parse_primary_formula(self) -> ast.FormulaNode:
        self._enter()
        try:
            return self._primary_formula()
        finally:
            self._leave()

    def _primary_formula(self) -> ast.FormulaNode:
        self.check_unsupported()
        t = self.peek()

        if t.kind in _QUANT_TOKENS and self._quant_lookahead():
            return self.parse_quantified()
        if t.kind in _QUANT_TOKENS and self.peek(1).kind is T.UNSUPPORTED_KW:
            self.advance()
            self.check_unsupported()
        if t.kind is T.ALL:
            self.fail("expected quantifier declarations after 'all'")
        if t.kind in _MULT_FORMULA_TOKENS:
            kw = self.advance()
            e = self.parse_expr()
            return ast.MultFormula(_MULT_FORMULA_TOKENS[kw.kind], e,
                                   span=(kw.start, e.span[1] if e.span else kw.end))

        # Try `expr [compareOp expr]`; fall back to a parenthesized formula.
        snapshot = self.pos
        expr_err: Optional[ParseError] = None
        e: Optional[ast.ExprNode] = None
        try:
            e = self.parse_expr()
        except ParseError as err:
            expr_err = err
            self.pos = snapshot
        if e is not None:
            cmp = self._compare_op()
            if cmp is not None:
                r = self.parse_expr()
                return ast.Compare(cmp, e, r, span=_join(e, r))
            call = _as_pred_call(e)
            if call is not None:
                return call
            # Not a comparison and not a call shape; maybe `( formula )`.
            self.pos = snapshot
        if self.at(T.LPAREN):
            self.advance()
            f = self.parse_formula()
            self.expect(T.RPAREN, "')'")
            return f
        if expr_err is not None:
            raise expr_err
        self.fail("expected a formula")

    def _compare_op(self) -> Optional[str]:
        if self.at(T.IN):
            self.advance()
            return "in"
        if self.at(T.EQ):
            self.advance()
            return "eq"
        if self.at(T.NEQ):
            self.advance()
            return "neq"
        if self.at(T.BANG) and self.peek(1).kind is T.IN:
            self.advance()
            self.advance()
            return "notin"
        if self.at(T.NOT) and self.peek(1).kind is T.IN:
            self.advance()
            self.advance()
            return "notin"
        return None

    # --- expressions ---

    def parse_expr(self) -> ast.ExprNode:
        self._enter()
        try:
            return self.parse_union()
        finally:
            self._leave()

    def parse_union(self) -> ast.ExprNode:
        e = self.parse_inter()
        while self.at(T.PLUS, T.MINUS):
            op = "+" if self.advance().kind is T.PLUS else "-"
            r = self.parse_inter()
            e = ast.BinExpr(op, e, r, span=_join(e, r))
        return e

    def parse_inter(self) -> ast.ExprNode:
        e = self.parse_arrow()
        while self.at(T.AMP):
            self.advance()
            r = self.parse_arrow()
            e = ast.BinExpr("&", e, r, span=_join(e, r))
        return e

    def parse_arrow(self) -> ast.ExprNode:
        e = self.parse_join()
        while self.at(T.ARROW):
            self.advance()
            r = self.parse_join()
            e = ast.BinExpr("->", e, r, span=_join(e, r))
        return e

    def parse_join(self) -> ast.ExprNode:
        e = self.parse_unary_expr()
        while True:
            if self.at(T.DOT):
                self.advance()
                r = self.parse_unary_expr()
                e = ast.BinExpr(".", e, r, span=_join(e, r))
            elif self.at(T.LBRACKET):
                self.advance()
                args = [self.parse_expr()]
                while self.at(T.COMMA):
                    self.advance()
                    args.append(self.parse_expr())
                rb = self.expect(T.RBRACKET, "']'")
                # e[a, b] is sugar for b.(a.e)
                for a in args:
                    e = ast.BinExpr(".", a, e,
                                    span=(e.span[0] if e.span else rb.start, rb.end))
            else:
                return e

    def parse_unary_expr(self) -> ast.ExprNode:
        if self.at(T.TILDE, T.CARET, T.STAR):
            op_tok = self.advance()
            op = {T.TILDE: "~", T.CARET: "^", T.STAR: "*"}[op_tok.kind]
            e = self.parse_unary_expr()
            return ast.UnaryExpr(op, e, span=(op_tok.start,
                                              e.span[1] if e.span else op_tok.end))
        return self.parse_primary_expr()

    def parse_primary_expr(self) -> ast.ExprNode:
        self.check_unsupported()
        t = self.peek()
        if t.kind is T.IDENT:
            self.advance()
            return ast.NameExpr(t.text, span=(t.start, t.end))
        if t.kind is T.UNIV:
            self.advance()
            return ast.UnivExpr(span=(t.start, t.end))
        if t.kind is T.IDEN:
            self.advance()
            return ast.IdenExpr(span=(t.start, t.end))
        if t.kind is T.NONE:
            self.advance()
            return ast.NoneExpr(span=(t.start, t.end))
        if t.kind is T.NUM:
            raise ParseError("unsupported construct: integers",
                             position=t.start, span=(t.start, t.end))
        if t.kind is T.LBRACE:
            raise ParseError("unsupported construct: set comprehension",
                             position=t.start, span=(t.start, t.end))
        if t.kind is T.LPAREN:
            self.advance()
            e = self.parse_expr()
            self.expect(T.RPAREN, "')'")
            return e
        self.fail("expected an expression")


def _join(l, r) -> Optional[ast.Span]:
    if getattr(l, "span", None) and getattr(r, "span", None):
        return (l.span[0], r.span[1])
    return None


def _as_pred_call(e: ast.ExprNode) -> Optional[ast.PredCall]:
    """Reinterpret a bare name or box-join chain as a predicate call.

    ``P`` becomes a 0-ary call; ``P[a, b]`` parses as the joins
    ``b.(a.P)`` and is folded back into a call with the original
    argument order.  Whether the name actually is a predicate is
    settled by the resolver.
    """
    args: list[ast.ExprNode] = []
    cur = e
    while isinstance(cur, ast.BinExpr) and cur.op == ".":
        args.append(cur.l)
        cur = cur.r
    if isinstance(cur, ast.NameExpr):
        return ast.PredCall(cur.name, list(reversed(args)), span=e.span)
    return None


def parse(text: str, max_bytes: int = DEFAULT_MAX_SOURCE_BYTES) -> ast.SourceModel:
    """Parse MiniAlloy source into a SourceModel.

    Raises LexError / ParseError / CodeTooLargeError.
    """
    tokens = tokenize(text, max_bytes=max_bytes)
    return _Parser(text, tokens).parse_model()
