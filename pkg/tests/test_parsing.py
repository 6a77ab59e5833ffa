import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gew.errors import ParseError
from gew.freewords import ReducedWord
from gew.groups import GeneratingSet, SymmetricGroup, ball
from gew.parsing import (
    parse_element,
    parse_equation,
    parse_group,
    parse_system,
    parse_system_text,
    parse_word,
    tokenize,
)

from tests.oracles import random_system

GROUPS = [
    "free(b,c)",
    "cyclic(a,6)",
    "symmetric(3)",
    "semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})",
    "direct(cyclic(a,2), symmetric(3))",
    "freeproduct(cyclic(s,2), cyclic(t,3))",
    "surface(orientable, genus=2)",
]


@pytest.mark.parametrize("text", GROUPS + ["direct(free(b,c), rational(1))", "surface(nonorientable, genus=3)"])
def test_group_description_round_trip(text):
    G = parse_group(text)
    assert parse_group(G.describe()) == G


@pytest.mark.parametrize("text", GROUPS)
def test_element_round_trip(text):
    G = parse_group(text)
    pts = ball(G, GeneratingSet.closure(G, G.generators().values()), 3)
    sample = random.Random(1).sample(pts, min(30, len(pts)))
    for x in sample:
        assert G.equal(parse_element(G.format(x), G), x)


def test_rational_element():
    G = parse_group("direct(free(b,c), rational(2))")
    x = parse_element("(b*c, rat(2/3, -1))", G)
    assert G.equal(parse_element(G.format(x), G), x)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=10))
def test_word_round_trip(letters):
    w = ReducedWord.from_signed(letters)
    assert parse_word(w.format(["b", "c"]), ["b", "c"])[0] == w


def test_word_forms():
    comm = parse_word("[b,c^2]", ["b", "c"])[0]
    assert comm == parse_word("b^-1*c^-2*b*c^2", ["b", "c"])[0]
    assert parse_word("b c", ["b", "c"])[0] == parse_word("b*c", ["b", "c"])[0]
    assert parse_word("1", ["b"])[0].is_identity()
    assert parse_word("[b,c,b]", ["b", "c"])[0] == parse_word("[[b,c],b]", ["b", "c"])[0]
    w, names = parse_word("q*p")
    assert names == ["q", "p"] and len(w) == 2


@pytest.mark.parametrize("G", [SymmetricGroup(3), parse_group("cyclic(a,6)")], ids=["S3", "Z6"])
def test_system_round_trip(G):
    rng = random.Random(4)
    for _ in range(25):
        s = random_system(rng, G, G.elements(), coefficients=True)
        assert parse_system_text(s.format()) == s


def test_system_file(tmp_path):
    p = tmp_path / "s.sys"
    p.write_text("# comment\ngroup: cyclic(a,6)\nvariables: x, y\n?x^2 = a^2  # trailing\n\n?y = 1\n")
    s = parse_system(p)
    assert s.variables == ("x", "y") and len(s.equations) == 2


def test_equation_with_constants():
    G = parse_group(GROUPS[3])
    eq = parse_equation("[?x,(b^2,1)] = (b^4,1)", G)
    assert eq.lhs.variables() == ["x"] and len(eq.lhs.constants()) == 2


@pytest.mark.parametrize(
    "text,column",
    [("b^", 2), ("b*(c", 5), ("[b]", 1), ("b^x", 2), ("b^^2", 2)],
)
def test_word_error_columns(text, column):
    with pytest.raises(ParseError) as exc:
        parse_word(text, ["b", "c"])
    assert exc.value.line == 1 and exc.value.column == column


def test_unknown_generator():
    with pytest.raises(ParseError):
        parse_word("d", ["b", "c"])


def test_system_error_line():
    with pytest.raises(ParseError) as exc:
        parse_system_text("group: cyclic(a,6)\n?x = a\n?x^ = a\n")
    assert exc.value.line == 3 and exc.value.column == 3


@pytest.mark.parametrize("text", ["foo(1)", "cyclic(a)", "semidirect(free(b), cyclic(a,2), action{b->c})", ""])
def test_bad_groups(text):
    with pytest.raises(ParseError):
        parse_group(text)


def test_tokenizer_rejects_stray_characters():
    with pytest.raises(ParseError) as exc:
        tokenize("b $ c")
    assert exc.value.column == 3
