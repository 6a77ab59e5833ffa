from hypothesis import given
from hypothesis import strategies as st

import pytest

from gew.freewords import ReducedWord, conjugate, free_ball, gen
from gew.lee import (
    LeeCandidate,
    ball_conjugator,
    check_lee_properties,
    generates_cyclic,
    simultaneous_conjugator,
)

a, b = gen(0), gen(1)
words = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=5).map(ReducedWord.from_signed)


def test_parse_and_evaluate():
    L = LeeCandidate.parse("[z1,z2]")
    assert L.arity == 2 and L.format() == "z1^-1*z2^-1*z1*z2"
    assert L.evaluate((a, b)) == a.inverse() * b.inverse() * a * b
    assert LeeCandidate.parse("z1", 2).arity == 2
    with pytest.raises(ValueError):
        LeeCandidate.parse("y1")
    with pytest.raises(ValueError):
        L.evaluate((a,))


def test_generates_cyclic():
    assert generates_cyclic((a ** 2, a ** -3))
    assert generates_cyclic((ReducedWord.from_signed([]), a * b))
    assert not generates_cyclic((a, b))
    assert not generates_cyclic((a, a * b))


@given(words, words, words)
def test_conjugated_tuple_is_found(u, v, s):
    vs = (u, v)
    ws = (conjugate(u, s), conjugate(v, s))
    t = simultaneous_conjugator(vs, ws)
    assert t is not None
    assert conjugate(u, t) == ws[0] and conjugate(v, t) == ws[1]


@given(words, words, words, words)
def test_exact_agrees_with_ball(u, v, x, y):
    pts = free_ball(2, 5)
    exact = simultaneous_conjugator((u, v), (x, y))
    brute = ball_conjugator((u, v), (x, y), pts)
    if brute is not None:
        assert exact is not None
    if exact is not None and len(exact) <= 5:
        assert brute is not None


def test_classic_counterexample():
    L = LeeCandidate.parse("[z1,z2]")
    vs, ws = (a, b), (a, a * b)
    assert L.evaluate(vs) == L.evaluate(ws)
    assert simultaneous_conjugator(vs, ws) is None
    assert ball_conjugator(vs, ws, free_ball(2, 4)) is None


def test_checker_commutator():
    rep = check_lee_properties(LeeCandidate.parse("[z1,z2]"), 2)
    assert rep.tuples_checked == 17 ** 2
    assert not rep.l2_counterexamples
    assert ((a, b), (a, a * b)) in rep.l1_counterexamples or ((a, a * b), (a, b)) in rep.l1_counterexamples
    assert rep.reverify()
    js = rep.to_json(limit=3, timings=False)
    assert js["l1_count"] == len(rep.l1_counterexamples) and len(js["l1_counterexamples"]) == 3


def test_checker_flags_l2():
    rep = check_lee_properties(LeeCandidate.parse("z1", 2), 1)
    assert rep.l2_counterexamples and rep.reverify()
    with pytest.raises(ValueError):
        check_lee_properties(LeeCandidate.parse("z1", 2), 0)
