import random
from fractions import Fraction

import pytest

from gew.errors import PreconditionError
from gew.groups import CyclicGroup, DirectProduct, GeneratingSet, RationalVector, SymmetricGroup, ball
from gew.parsing import parse_group, parse_system_text
from gew.solver import lift_from_k, quotient_by_q, quotient_group, solve_bounded, unique_in_ball

from tests.oracles import brute_solutions, random_system

S3 = SymmetricGroup(3)
Z6 = CyclicGroup("a", 6)


def gens(G):
    return GeneratingSet.closure(G, G.generators().values())


def as_keys(G, system, sols):
    return {tuple(G.bucket(s[v]) for v in system.variables) for s in sols}


def test_square_root_of_identity(H, U, el):
    s = parse_system_text(
        "group: semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})\n?x^2 = (1,1)\n"
    )
    rep = solve_bounded(s, U, 2)
    got = [H.format(a["x"]) for a in rep.solutions]
    assert got == ["(1,1)", "(b,a)", "(1,a)"]
    assert rep.lengths == [0, 1, 1] and not rep.exhaustive


def test_soundness_and_monotonicity(H, U):
    s = parse_system_text(
        "group: semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})\n?x*?y = (c^2,1)\n"
    )
    prev = set()
    for r in range(3):
        rep = solve_bounded(s, U, r)
        for a in rep.solutions:
            assert H.equal(s.equations[0].lhs.evaluate(a, H), s.equations[0].rhs)
        cur = as_keys(H, s, rep.solutions)
        assert prev <= cur
        prev = cur
    assert prev


@pytest.mark.parametrize("G", [S3, Z6], ids=["S3", "Z6"])
def test_exhaustive_matches_brute_force(G):
    rng = random.Random(8)
    U = gens(G)
    for _ in range(10):
        s = random_system(rng, G, G.elements(), coefficients=True)
        rep = solve_bounded(s, U, G.size())
        assert rep.exhaustive
        want = {tuple(G.bucket(x) for x in v) for v in brute_solutions(s, G.elements())}
        assert as_keys(G, s, rep.solutions) == want


def test_threaded_matches_serial():
    s = parse_system_text("group: symmetric(3)\n?x*?y*?x^-1*?y^-1 = 1\n?x^2 = 1\n")
    a = solve_bounded(s, gens(S3), 3, workers=1)
    b = solve_bounded(s, gens(S3), 3, workers=4)
    assert [tuple(x.values()) for x in a.solutions] == [tuple(x.values()) for x in b.solutions]


def test_abelian_regression():
    # x^2 y^3 = a in Z6: counted by hand over all 36 pairs
    s = parse_system_text("group: cyclic(a,6)\n?x^2*?y^3 = a\n")
    rep = solve_bounded(s, gens(Z6), 6)
    assert len(rep.solutions) == 6
    assert all((2 * a["x"] + 3 * a["y"]) % 6 == 1 for a in rep.solutions)


def test_inconsistent_constant_equation():
    s = parse_system_text("group: cyclic(a,6)\nvariables: x\na = 1\n")
    assert solve_bounded(s, gens(Z6), 2).solutions == []


def test_quotient_helpers():
    G = parse_group("direct(free(b,c), rational(1))")
    K = quotient_group(G)
    assert K.describe() == "free(b,c)"
    x = lift_from_k(G, K.generators()["b"], (Fraction(2, 3),))
    assert x[1] == (Fraction(2, 3),)
    assert quotient_by_q(G, x) == K.generators()["b"]
    D3 = DirectProduct((Z6, RationalVector(1), S3))
    k = (2, S3.identity())
    assert quotient_by_q(D3, lift_from_k(D3, k)) == k
    with pytest.raises(PreconditionError):
        quotient_group(Z6)


def test_unique_in_ball(H, U, el):
    s = parse_system_text(
        "group: semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})\n?x = (b,a)\n"
    )
    assert unique_in_ball(s, U, 2, {"x": el("(b,a)")})
    assert not unique_in_ball(s, U, 2, {"x": el("(1,a)")})


def test_search_report_json(H, U):
    s = parse_system_text(
        "group: semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})\n?x^2 = (1,1)\n"
    )
    out = solve_bounded(s, U, 1).to_json(timings=False)
    assert "elapsed_ms" not in out and out["ball_size"] == len(ball(H, U, 1))
