from __future__ import annotations

import random

import pytest

from a4f.errors import ParseError
from a4f.lang import ast, parse


def only_paragraph(text):
    m = parse(text)
    assert len(m.paragraphs) == 1
    return m.paragraphs[0]


def formula_of(text):
    """Parse `pred P { <text> }` and return the body formula."""
    return only_paragraph("pred P { " + text + " }").body.body


def expr_of(text):
    f = formula_of(text + " in none")
    assert isinstance(f, ast.Compare)
    return f.l


class TestParagraphs:
    def test_fig1_style_public_pred_secret_check(self):
        m = parse("pred Inv2 { }\n//SECRET\ncheck Inv2OK for 6\n")
        assert [p.kind for p in m.paragraphs] == ["pred", "check"]
        assert [p.secret for p in m.paragraphs] == [False, True]
        assert m.paragraphs[1].name == "Inv2OK"

    def test_anonymous_fact_naming(self):
        p = only_paragraph("fact { no none }")
        assert p.kind == "fact" and p.name == "fact$0"

    def test_anonymous_counters_are_per_kind(self):
        m = parse("fact { no none }\nfact { no none }\nrun {} for 1\n"
                  "run {} for 1\ncheck { no none } for 1")
        assert [p.name for p in m.paragraphs] == \
            ["fact$0", "fact$1", "run$0", "run$1", "check$0"]

    def test_multi_name_sig(self):
        p = only_paragraph("sig C1, C2 extends S {}")
        assert [d.name for d in p.body] == ["C1", "C2"]
        assert all(d.parent == "S" for d in p.body)

    def test_named_fact_and_assert(self):
        m = parse("fact Acyclic { no none }\nassert Sound { no none }")
        assert [(p.kind, p.name) for p in m.paragraphs] == \
            [("fact", "Acyclic"), ("assert", "Sound")]

    def test_run_with_scope_override(self):
        p = only_paragraph("run {} for 3 but exactly 2 A")
        cmd = p.body
        assert cmd.kind == "run"
        assert cmd.scope.default == 3
        assert cmd.scope.overrides == [("A", 2, True)]

    def test_scope_without_default(self):
        p = only_paragraph("run {} for exactly 2 A, 1 B")
        assert p.body.scope.default == 3
        assert p.body.scope.overrides == [("A", 2, True), ("B", 1, False)]

    def test_no_for_clause_defaults_to_three(self):
        p = only_paragraph("run {}")
        assert p.body.scope.default == 3 and p.body.scope.overrides == []

    def test_zero_default_scope_rejected(self):
        with pytest.raises(ParseError):
            parse("run {} for 0")

    def test_named_inline_command(self):
        p = only_paragraph("check X { no none } for 3")
        assert p.name == "X" and p.body.target_name is None
        assert p.body.body is not None

    def test_command_referencing_target(self):
        p = only_paragraph("check Inv2OK for 6")
        assert p.body.target_name == "Inv2OK" and p.body.body is None

    def test_field_default_multiplicity_is_one(self):
        p = only_paragraph("sig A { f: A }")
        assert p.body[0].fields[0].range_mult == "one"

    def test_ternary_field_with_arrow_mults(self):
        p = only_paragraph("sig A { g: A lone -> some A }")
        f = p.body[0].fields[0]
        assert f.cols == ["A", "A"] and f.arrow_mult == ("lone", "some")

    def test_leading_mult_on_ternary_rejected(self):
        with pytest.raises(ParseError, match="unsupported"):
            parse("sig A { g: one A -> A }")


class TestSecretMarkers:
    def test_marker_not_followed_by_paragraph(self):
        with pytest.raises(ParseError):
            parse("sig A {}\n//SECRET\n")

    def test_double_marker_rejected(self):
        with pytest.raises(ParseError):
            parse("//SECRET\n//SECRET\nsig A {}")

    def test_marker_with_intervening_comment_rejected(self):
        with pytest.raises(ParseError):
            parse("//SECRET\n// something else\nsig A {}")

    def test_blank_lines_between_marker_and_paragraph(self):
        m = parse("//SECRET\n\n\nsig A {}")
        assert m.paragraphs[0].secret

    def test_secret_detection_matches_reference_regex(self):
        # randomized corpus: markers, near-miss comments, blank lines
        rng = random.Random(42)
        kinds = ["sig S%d {}", "fact { no none }", "pred P%d { some S0 }",
                 "run {} for 1", "check { no none } for 1"]
        for round_no in range(200):
            lines = ["sig S0 {}"]
            expected = [False]
            for k in range(rng.randint(1, 5)):
                secret = rng.random() < 0.4
                if secret:
                    lines.append("//SECRET")
                    if rng.random() < 0.3:
                        lines.append("")
                elif rng.random() < 0.3:
                    lines.append(rng.choice(["// note", "--dash", "//SECRET "]))
                body = rng.choice(kinds)
                lines.append(body % (k + 1) if "%d" in body else body)
                expected.append(secret)
            text = "\n".join(lines) + "\n"
            got = [p.secret for p in parse(text).paragraphs]
            assert got == expected, text


class TestPrecedence:
    def test_intersection_binds_tighter_than_union(self):
        assert formula_of("some a + b & c") == formula_of("some a + (b & c)")

    def test_implies_is_right_associative(self):
        assert formula_of("p implies q implies r") == \
            formula_of("p implies (q implies r)")

    def test_or_looser_than_iff_looser_than_implies(self):
        assert formula_of("p or q iff r") == formula_of("p or (q iff r)")
        assert formula_of("p iff q implies r") == formula_of("p iff (q implies r)")

    def test_and_tighter_than_implies(self):
        assert formula_of("p and q implies r and s") == \
            formula_of("(p and q) implies (r and s)")

    def test_not_binds_tightest(self):
        f = formula_of("not p and q")
        assert isinstance(f, ast.BinFormula) and f.op == "and"
        assert isinstance(f.l, ast.NotFormula)

    def test_join_tighter_than_arrow(self):
        assert expr_of("a.b -> c") == expr_of("(a.b) -> c")

    def test_arrow_tighter_than_intersection(self):
        assert expr_of("a -> b & c") == expr_of("(a -> b) & c")

    def test_unary_tightest(self):
        assert expr_of("^a.b") == expr_of("(^a).b")

    def test_box_join_desugars(self):
        assert expr_of("f[x]") == expr_of("x.f")
        assert expr_of("f[x, y]") == expr_of("y.(x.f)")

    def test_symbol_and_keyword_forms_agree(self):
        assert formula_of("p && q") == formula_of("p and q")
        assert formula_of("p || q") == formula_of("p or q")
        assert formula_of("p => q") == formula_of("p implies q")
        assert formula_of("p <=> q") == formula_of("p iff q")
        assert formula_of("!p") == formula_of("not p")
        assert formula_of("a !in b") == formula_of("a not in b")


class TestRoundTrip:
    SOURCES = [
        "sig A { r: set A }\n//SECRET\nfact { no r }\nrun T {some r} for 2\n",
        "abstract sig S {}\none sig C1 extends S {}\nsig C2 extends S {}\n"
        "pred P[x: S] { x in C1 }\ncheck { all y: C1 | P[y] } for 3\n",
        "sig Node { next: lone Node, tag: Node -> Node }\n"
        "//SECRET\npred Spec { all n: Node | n !in n.^next }\n"
        "run Big { some ~next & iden } for 3 but exactly 2 Node\n",
    ]

    @pytest.mark.parametrize("src", SOURCES)
    def test_reparse_of_spans_is_structurally_equal(self, src):
        m = parse(src)
        joined = "\n".join(m.paragraph_source(p) for p in m.paragraphs)
        again = parse(joined)
        assert again.paragraphs == m.paragraphs


class TestUnsupportedConstructs:
    @pytest.mark.parametrize("src,needle", [
        ("fact { #A = 2 }", "cardinality"),
        ("fact { let x = A | some x }", "let"),
        ("fun f[]: A {}", "function"),
        ("open util/ordering", "import"),
        ("sig A in B {}", "subset"),
        ("fact { all disj x, y: A | x != y }", "disj"),
        ("fact { some A <: r }", "domain restriction"),
        ("fact { some r :> A }", "range restriction"),
        ("fact { some r ++ s }", "override"),
        ("sig A { n: Int }", "integers"),
        ("fact { some {x: A | no x} }", "comprehension"),
        ("run { some seq A } for 2", "sequences"),
    ])
    def test_rejected_with_construct_name(self, src, needle):
        with pytest.raises(ParseError) as e:
            parse(src)
        assert "unsupported" in e.value.message
        assert needle in e.value.message


def test_every_ast_constructor_reachable_from_golden_corpus():
    golden = [
        "sig A { r: set A, t: A -> A }\nsig B {}",
        "pred P { all x: A | some y: B | no z: A | lone w: A | one v: B | "
        "x in A and (y = y or v != v) implies not w in A iff x !in r.A }",
        "pred Q[s: A] { some s.r & ^r + *r - ~r }",
        "fact { some univ and no none and one iden & r }",
        "run { Q[A] } for 2",
        "check { P } for 2",
        "fact { some (A -> B) }",
    ]
    m = parse("\n".join(golden))
    seen = set()
    for p in m.paragraphs:
        nodes = []
        if p.kind in ("fact", "assert"):
            nodes = list(ast.walk_formula(p.body))
        elif p.kind == "pred":
            nodes = list(ast.walk_formula(p.body.body))
        elif p.kind in ("run", "check") and p.body.body is not None:
            nodes = list(ast.walk_formula(p.body.body))
        for n in nodes:
            seen.add(type(n).__name__)
            for attr in ("kind", "op"):
                v = getattr(n, attr, None)
                if isinstance(v, str):
                    seen.add(f"{type(n).__name__}:{v}")
    required = {
        "Quant:all", "Quant:some", "Quant:no", "Quant:lone", "Quant:one",
        "BinFormula:and", "BinFormula:or", "BinFormula:implies", "BinFormula:iff",
        "NotFormula", "Compare:in", "Compare:eq", "Compare:neq", "Compare:notin",
        "MultFormula:some", "MultFormula:no", "MultFormula:lone", "MultFormula:one",
        "PredCall", "NameExpr", "VarExpr", "UnivExpr", "IdenExpr", "NoneExpr",
        "UnaryExpr:~", "UnaryExpr:^", "UnaryExpr:*",
        "BinExpr:+", "BinExpr:-", "BinExpr:&", "BinExpr:->", "BinExpr:.",
    }
    assert required <= seen, sorted(required - seen)
