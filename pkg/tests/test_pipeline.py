import math
import random
from pathlib import Path

import pytest

from gew.eqsys import Const, Equation, EquationSystem, MixedWord, Var, is_solution, reduce_to_diagonal
from gew.errors import PreconditionError, T2ViolationError
from gew.groups import CyclicGroup, GeneratingSet, SymmetricGroup, geodesic
from gew.parsing import parse_element, parse_mixed, parse_system, parse_system_text
from gew.pipeline import (
    LeeCandidate,
    RoundTripConfig,
    build_main_s1,
    build_main_s2,
    build_sml_s1,
    decompose,
    lee_collapse,
    observation_equation,
    q_correct,
    residues,
    run_main_theorem_round_trip,
)
from gew.drivers import load_roundtrip_config, semidirect_setup
from gew.verbal import EWordTemplate, LawWord, find_witness

from tests.oracles import brute_solutions, random_system

SYSTEMS = Path(__file__).resolve().parent.parent / "systems"
S3 = SymmetricGroup(3)
Z6 = CyclicGroup("a", 6)


def restricted(G, sols, n):
    return {tuple(G.bucket(x) for x in v[:n]) for v in sols}


class TestObservation:
    def test_s3_targets(self):
        U = S3.transpositions()
        for f in S3.elements():
            path = geodesic(S3, U, f, 6) or [U[0], U[0]]
            res = observation_equation(S3, f, path)
            assert all(math.gcd(res.p, n) == 1 for n in res.orders)
            assert S3.equal(res.equation.lhs.evaluate(res.assignment, S3), f)

    def test_infinite_order_rejected(self, H, el):
        with pytest.raises(PreconditionError):
            observation_equation(H, el("(b,1)"), [el("(b,1)")])

    def test_wrong_decomposition(self):
        t = S3.transpositions()
        with pytest.raises(PreconditionError):
            observation_equation(S3, S3.identity(), [t[0]])


class TestMainConstruction:
    def test_decompose_identity(self, H, U):
        path = decompose(H, U, H.identity(), 2)
        assert len(path) == 2 and H.is_identity(H.mul(path[0], path[1]))

    def test_s1_equivalent_on_finite_group(self):
        rng = random.Random(21)
        U = GeneratingSet(S3, S3.transpositions())
        for _ in range(6):
            s = random_system(rng, S3, S3.elements(), max_vars=2, max_eqs=2)
            s1 = build_main_s1(s, U, 3)
            n = len(s.variables)
            assert restricted(S3, brute_solutions(s1.system, S3.elements()), n) == restricted(
                S3, brute_solutions(s, S3.elements()), n
            )
            for eq in s1.system.equations:
                assert any(S3.equal(eq.rhs, u) for u in U)

    def test_s2_carries_solutions(self, H, U, el):
        _, _, law, ewords = semidirect_setup()
        s = parse_system_text(
            "group: semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})\n?x1*?x2 = (b,a)*(c,a)\n"
        )
        s1 = build_main_s1(s, U, 3)
        s2 = build_main_s2(s1.system, ewords, law)
        sol = {"x1": el("(b,a)"), "x2": el("(c,a)")}
        sol.update({y: u for ys, d in zip(s1.added, s1.decompositions) for y, u in zip(ys, d[1:])})
        assert is_solution(s1.system, sol) and is_solution(s2, sol)

    def test_s2_needs_templates(self, H, U):
        s = parse_system_text(
            "group: semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})\n?x = (b,a)\n"
        )
        with pytest.raises(PreconditionError):
            build_main_s2(s, [])
        bad = [(parse_element("(b,a)", H), [EWordTemplate(parse_mixed("?x^3", H))])]
        with pytest.raises(PreconditionError):
            build_main_s2(s, bad, LawWord.parse("t^2"))


class TestResidues:
    def test_head_residue_corrected(self):
        s = parse_system(SYSTEMS / "semidirect_rational.sys")
        g = s.group
        diag, _ = reduce_to_diagonal(s)
        Q = g.factors[g.q_index]
        K = g.factors[0]
        x1, x2 = parse_element("(b,a)", K), parse_element("(c,a)", K)
        found = {"x1": (x1, Q.identity()), "x2": (K.mul(K.power(x1, -2), K.mul(x1, x2)), Q.identity())}
        qs = residues(diag.system, found)
        assert any(not Q.is_identity(q) for q in qs.values())
        fixed = q_correct(diag, found, qs)
        assert is_solution(diag.system, fixed)

    def test_pure_residue_is_a_violation(self):
        s = parse_system_text(
            "group: direct(cyclic(a,6), rational(1))\n?x^-1*?y^-1*?x*?y = (1, rat(1/2))\n?x = (1, rat(0))\n"
        )
        diag, _ = reduce_to_diagonal(s)
        Q = s.group.factors[1]
        found = {"x": (1, Q.identity()), "y": (0, Q.identity())}
        qs = {p.equation: parse_element("rat(1/2)", Q) for p in diag.pures}
        with pytest.raises(T2ViolationError):
            q_correct(diag, found, qs)


class TestConstantsAndCollapse:
    def test_sml_on_s3(self):
        law = LawWord.parse("t^3")
        U = GeneratingSet(S3, S3.transpositions())
        t = S3.transpositions()
        s = EquationSystem(S3, ("x",), (Equation(MixedWord.of(S3, [Var("x", 2), Const(t[0])]), t[0]),))
        w = find_witness(S3, law, U, t[0], 1, 1)
        res = build_sml_s1(s, law, [w], U=U, radius=1)
        assert res.augmented and not res.system.has_coefficients()
        n = len(s.variables)
        orig = brute_solutions(s, S3.elements())
        new = brute_solutions(res.system, S3.elements())
        assert restricted(S3, new, n) == restricted(S3, orig, n)
        for vals in orig:
            a = dict(zip(s.variables, vals))
            a.update(res.witness_assignment)
            assert is_solution(res.system, a)

    def test_lee_collapse(self, H, el):
        s = parse_system_text(
            "group: semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})\n?x*?y = (b*c,1)\n?y = (c,1)\n"
        )
        eq = lee_collapse(s, LeeCandidate.parse("[z1,z2]"))
        a = {"x": el("(b,1)"), "y": el("(c,1)")}
        assert is_solution(s, a)
        assert H.equal(eq.lhs.evaluate(a, H), eq.rhs)
        with pytest.raises(PreconditionError):
            lee_collapse(s, LeeCandidate.parse("z1"))


class TestRoundTrip:
    @pytest.mark.parametrize("name", ["semidirect_ba.sys", "semidirect_two_vars.sys", "semidirect_rational.sys"])
    def test_system_files(self, name):
        s = parse_system(SYSTEMS / name)
        cfg, _ = load_roundtrip_config(SYSTEMS / "semidirect.json", s.group)
        res = run_main_theorem_round_trip(s, cfg)
        assert res.ok and is_solution(s, res.assignment)
        assert [st["stage"] for st in res.stages][-1] == "map-back"

    def test_random_z6(self):
        rng = random.Random(99)
        U = GeneratingSet.closure(Z6, [1])
        ewords = [(u, [EWordTemplate(parse_mixed("?x", Z6))]) for u in U]
        cfg = RoundTripConfig(U=list(U), ewords=ewords, radius=3, law=LawWord.parse("t"))
        done = 0
        while done < 8:
            s = random_system(rng, Z6, Z6.elements(), coefficients=True)
            solvable = bool(brute_solutions(s, Z6.elements()))
            res = run_main_theorem_round_trip(s, cfg)
            assert res.ok == solvable
            if solvable:
                assert is_solution(s, res.assignment)
                done += 1
