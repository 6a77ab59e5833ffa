"""Symbolic system transformers and the full reduction round trip.

Stages available here:

* ``observation_equation``: a power equation ``x1^p ... xm^p = f`` with a
  solution read off a decomposition of ``f`` into finite-order elements.
* ``build_main_s1`` / ``build_main_s2``: split every right-hand side over a
  generating set ``U``, then replace each ``w = u`` by template equations.
* ``q_correct``: remove rational residues from head equations.
* ``build_sml_s1`` / ``lee_collapse``: trade constants for witnessed
  law values, then fold a system into one equation with a Lee candidate.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .eqsys import (
    Const,
    DiagonalForm,
    Equation,
    EquationSystem,
    MixedWord,
    Var,
    eliminate_coefficients,
    is_solution,
    map_solution_back,
    reduce_to_diagonal,
)
from .errors import PreconditionError, T2ViolationError, UnwitnessedError
from .groups import DirectProduct, GeneratingSet, Group, commutator, geodesic
from .lee import LeeCandidate, check_lee_properties  # noqa: F401  (re-export)
from .solver import lift_from_k, quotient_by_q, quotient_group, solve_bounded
from .verbal import LawWord, Witness, e_word_membership, iter_verbal_ball


# -- observation --------------------------------------------------------------------


@dataclass(frozen=True)
class ObservationResult:
    p: int
    equation: Equation
    assignment: dict
    multipliers: tuple
    orders: tuple


def observation_equation(group: Group, f, decomposition: Sequence) -> ObservationResult:
    """``x1^p ... xm^p = f`` solved by ``x_i = s_i^(m_i)`` with ``p m_i = 1 mod ord(s_i)``."""
    if not decomposition:
        raise PreconditionError("empty decomposition")
    acc = group.identity()
    for s in decomposition:
        acc = group.mul(acc, s)
    if not group.equal(acc, f):
        raise PreconditionError("decomposition does not multiply to f")
    orders = []
    for s in decomposition:
        n = group.order(s)
        if n is None:
            raise PreconditionError(f"{group.format(s)} has infinite order")
        orders.append(n)
    p = 2
    while any(math.gcd(p, n) != 1 for n in orders):
        p += 1
    ms = tuple(pow(p, -1, n) if n > 1 else 0 for n in orders)
    names = [f"x{i + 1}" for i in range(len(decomposition))]
    lhs = MixedWord(tuple(Var(v, p) for v in names))
    eq = Equation(lhs, f)
    assignment = {v: group.power(s, m) for v, s, m in zip(names, decomposition, ms)}
    if not group.equal(lhs.evaluate(assignment, group), f):
        raise AssertionError("observation assignment fails verification")
    return ObservationResult(p, eq, assignment, ms, tuple(orders))


# -- main construction ----------------------------------------------------------------


def _fresh(taken, stem: str):
    taken = set(taken)
    k = 1
    while True:
        name = f"{stem}{k}"
        if name not in taken:
            taken.add(name)
            yield name
        k += 1


def decompose(group: Group, U, h, radius: int) -> list:
    """Shortest ``[u0, ..., ut]`` over ``U`` with product ``h``; the identity becomes ``u u^-1``."""
    path = geodesic(group, U, h, radius)
    if path is None:
        raise PreconditionError(f"{group.format(h)} is not reachable within radius {radius}")
    if not path:
        u = U[0]
        path = [u, group.inv(u)]
    return path


@dataclass(frozen=True)
class MainS1:
    system: EquationSystem
    decompositions: tuple
    added: tuple  # per original equation: the y-variable names


def build_main_s1(system: EquationSystem, U, radius: int) -> MainS1:
    """Rewrite ``w_i = h_i`` as ``w_i y_t^-1 ... y_1^-1 = u_0`` plus ``y_j = u_j``."""
    if system.has_coefficients():
        raise PreconditionError("eliminate coefficients first")
    g = system.group
    U = GeneratingSet(g, U) if not isinstance(U, GeneratingSet) else U
    names = _fresh(system.variables, "y")
    head_eqs, tail_eqs, decs, added = [], [], [], []
    new_vars = list(system.variables)
    for eq in system.equations:
        path = decompose(g, U, eq.rhs, radius)
        ys = [next(names) for _ in path[1:]]
        new_vars += ys
        lhs = eq.lhs
        for y in reversed(ys):
            lhs = lhs.mul(MixedWord.var(y, -1), g)
        head_eqs.append(Equation(lhs, path[0]))
        tail_eqs += [Equation(MixedWord.var(y), u) for y, u in zip(ys, path[1:])]
        decs.append(tuple(path))
        added.append(tuple(ys))
    s1 = EquationSystem(g, tuple(new_vars), tuple(head_eqs + tail_eqs))
    return MainS1(s1, tuple(decs), tuple(added))


def _templates_for(group: Group, ewords, u):
    items = ewords.items() if isinstance(ewords, Mapping) else ewords
    for key, temps in items:
        if group.equal(key, u):
            return temps
    return None


def build_main_s2(system: EquationSystem, ewords, law: LawWord | None = None) -> EquationSystem:
    """Replace each ``w = u`` by ``E(w) = E(u)`` for every template ``E`` of ``u``.

    ``ewords`` maps (or lists pairs) ``u -> [EWordTemplate, ...]``. With a
    ``law`` every template is checked for membership first.
    """
    g = system.group
    out = []
    for eq in system.equations:
        temps = _templates_for(g, ewords, eq.rhs)
        if not temps:
            raise PreconditionError(f"no templates for {g.format(eq.rhs)}")
        for t in temps:
            if law is not None and not e_word_membership(t, law, g):
                raise PreconditionError(f"template {t.format(g)} fails the membership test")
            out.append(Equation(t.instantiate(eq.lhs, g), t.evaluate(g, eq.rhs)))
    return EquationSystem(g, system.variables, tuple(out))


# -- rational residues ----------------------------------------------------------------


def residues(system: EquationSystem, assignment: Mapping) -> dict[int, tuple]:
    """``q_i`` with ``w_i(x) = h_i q_i`` where both sides agree modulo Q."""
    g = system.group
    kq = quotient_group(g)
    out = {}
    for i, eq in enumerate(system.equations):
        val = eq.lhs.evaluate(assignment, g)
        q = g.mul(g.inv(eq.rhs), val)
        if not kq.is_identity(quotient_by_q(g, q)):
            raise PreconditionError(f"equation {i} fails modulo Q")
        out[i] = q[g.q_index]
    return out


def q_correct(diag: DiagonalForm, found: Mapping, qs: Mapping[int, tuple]) -> dict:
    """Shift head variables by ``r_i^-1`` where ``r_i^(m_i) = q_i``."""
    g = diag.system.group
    if not isinstance(g, DirectProduct) or g.q_index is None:
        raise PreconditionError("q-correction needs a direct product with a rational factor")
    qi = g.q_index
    Q = g.factors[qi]
    for p in diag.pures:
        q = qs.get(p.equation, Q.identity())
        if not Q.is_identity(q):
            raise T2ViolationError(
                f"pure equation {p.equation} has nontrivial residue {Q.format(q)}"
            )
    out = dict(found)
    for h in diag.heads:
        q = qs.get(h.equation, Q.identity())
        if Q.is_identity(q):
            continue
        r = Q.root(q, h.multiplicity)
        out[h.variable] = g.mul(g.embed(qi, Q.inv(r)), out[h.variable])
    if not is_solution(diag.system, out):
        raise PreconditionError("corrected assignment does not solve the system")
    return out


# -- constants through witnesses ---------------------------------------------------------


def _non_cyclic_pair(group: Group, elems):
    for i, x in enumerate(elems):
        for y in elems[i + 1:]:
            if not group.is_identity(commutator(group, x, y)):
                return x, y
    return None


@dataclass(frozen=True)
class SmLResult:
    system: EquationSystem
    witness_assignment: dict
    witnesses: tuple
    augmented: bool


def build_sml_s1(
    system: EquationSystem,
    law: LawWord,
    witnesses: Sequence[Witness],
    U=None,
    radius: int = 2,
    length: int = 1,
    augment: Sequence[Witness] | None = None,
) -> SmLResult:
    """Replace each constant ``h`` by ``t(y)`` from its witness and add ``t(y) = h``.

    The witnessed set is augmented with two non-commuting verbal elements
    when it does not already contain such a pair.
    """
    g = system.group
    for w in witnesses:
        if not w.verify(g, law):
            raise UnwitnessedError(f"witness for {g.format(w.element)} does not verify")
    wits = list(witnesses)
    augmented = False
    if _non_cyclic_pair(g, [w.element for w in wits]) is None:
        extra = list(augment or [])
        if not extra:
            if U is None:
                raise PreconditionError("augmentation needs a generating set")
            pool = []
            for w in iter_verbal_ball(g, law, U, radius, length):
                if g.is_identity(w.element):
                    continue
                pool.append(w)
                pair = _non_cyclic_pair(g, [v.element for v in wits + pool])
                if pair is not None:
                    extra = [v for v in pool if any(v.element is x for x in pair)]
                    break
        if _non_cyclic_pair(g, [w.element for w in wits + extra]) is None:
            raise PreconditionError("no non-commuting verbal elements found within the bound")
        for w in extra:
            if not w.verify(g, law):
                raise UnwitnessedError("augmentation witness does not verify")
        wits += extra
        augmented = True

    taken = set(system.variables)
    names = _fresh(taken, "y")
    words: list[tuple[object, MixedWord]] = []
    assignment: dict = {}
    added: list[Equation] = []
    new_vars: list[str] = []
    for w in wits:
        if any(g.equal(w.element, c) for c, _ in words):
            continue
        mw = MixedWord()
        for tup, sign in w.terms:
            ys = [next(names) for _ in range(law.arity)]
            new_vars += ys
            assignment.update(zip(ys, tup))
            term = MixedWord()
            for gi, e in law.word.syllables:
                term = term.mul(MixedWord.var(ys[gi], e), g)
            mw = mw.mul(term.power(sign, g), g)
        words.append((w.element, mw))
        added.append(Equation(mw, w.element))

    def lookup(c) -> MixedWord:
        for value, mw in words:
            if g.equal(value, c):
                return mw
        raise UnwitnessedError(f"constant {g.format(c)} has no witness")

    eqs = []
    for eq in system.equations:
        out = MixedWord()
        for it in eq.lhs.items:
            part = lookup(it.value) if isinstance(it, Const) else MixedWord((it,))
            out = out.mul(part, g)
        eqs.append(Equation(out, eq.rhs))
    s1 = EquationSystem(g, system.variables + tuple(new_vars), tuple(eqs + added))
    return SmLResult(s1, assignment, tuple(wits), augmented)


def lee_collapse(system: EquationSystem, L: LeeCandidate) -> Equation:
    """``L(u_1, ..., u_N) = L(f_1, ..., f_N)`` for ``S = {u_i = f_i}``."""
    if L.arity != len(system.equations):
        raise PreconditionError(f"candidate arity {L.arity} != {len(system.equations)} equations")
    g = system.group
    lhs = MixedWord()
    rhs = g.identity()
    for gi, e in L.word.syllables:
        eq = system.equations[gi]
        lhs = lhs.mul(eq.lhs.power(e, g), g)
        rhs = g.mul(rhs, g.power(eq.rhs, e))
    return Equation(lhs, rhs)


# -- round trip ---------------------------------------------------------------------------


@dataclass
class RoundTripConfig:
    U: Sequence
    ewords: object
    radius: int = 3
    decompose_radius: int | None = None
    law: LawWord | None = None


@dataclass
class RoundTripResult:
    ok: bool
    assignment: dict | None
    stages: list = field(default_factory=list)
    elapsed_ms: float = 0.0


def _project(system: EquationSystem, K: Group) -> EquationSystem:
    g = system.group
    eqs = []
    for eq in system.equations:
        items = tuple(
            Const(quotient_by_q(g, it.value)) if isinstance(it, Const) else it for it in eq.lhs.items
        )
        eqs.append(Equation(MixedWord.of(K, items), quotient_by_q(g, eq.rhs)))
    return EquationSystem(K, system.variables, tuple(eqs))


def run_main_theorem_round_trip(system: EquationSystem, config: RoundTripConfig) -> RoundTripResult:
    """Reduce, split over U, apply templates, search, correct residues, and map back.

    Each stage records what it certifies: S to S1 is an equivalence,
    S1 to S2 only carries solutions forward, and the searched S2 solution is
    re-checked against the reduced system directly.
    """
    t0 = time.perf_counter()
    g = system.group
    stages = []

    def stage(name, certifies, **details):
        stages.append({"stage": name, "certifies": certifies, **details})

    original = system
    if system.has_coefficients():
        system = eliminate_coefficients(system)
        stage("eliminate", "solutions restrict/extend", variables=list(system.variables))
    diag, log = reduce_to_diagonal(system)
    stage("reduce", "replayable moves; solutions map both ways", diagonal=diag.to_json(), log=log.to_json())

    with_q = isinstance(g, DirectProduct) and g.q_index is not None
    K = quotient_group(g) if with_q else g
    dsys = _project(diag.system, K) if with_q else diag.system
    if with_q:
        stage("quotient", "work modulo Q", group=K.describe())

    U = GeneratingSet(K, config.U)
    s1 = build_main_s1(dsys, U, config.decompose_radius or config.radius)
    stage(
        "S1",
        "S1 solvable iff the reduced system is",
        equations=[e.format(K) for e in s1.system.equations],
        decompositions=[[K.format(u) for u in d] for d in s1.decompositions],
    )
    s2 = build_main_s2(s1.system, config.ewords, config.law)
    stage("S2", "a solution of S1 is a solution of S2", equations=[e.format(K) for e in s2.equations])

    rep = solve_bounded(s2, U, config.radius)
    stage("solve", "bounded search over S2", **rep.to_json(timings=False))
    if not rep.solutions:
        return RoundTripResult(False, None, stages, (time.perf_counter() - t0) * 1000.0)
    found_k = None
    for sol in rep.solutions:
        cand = {v: sol[v] for v in dsys.variables}
        if is_solution(dsys, cand):
            found_k = cand
            break
    stage("check-reduced", "an S2 solution solves the reduced system", ok=found_k is not None)
    if found_k is None:
        return RoundTripResult(False, None, stages, (time.perf_counter() - t0) * 1000.0)

    if with_q:
        lifted = {v: lift_from_k(g, x) for v, x in found_k.items()}
        qs = residues(diag.system, lifted)
        fixed = q_correct(diag, lifted, qs)
        Q = g.factors[g.q_index]
        stage(
            "q-correct",
            "exact after rational roots",
            residues={str(i): Q.format(q) for i, q in qs.items()},
        )
    else:
        fixed = found_k
    full = map_solution_back(log, fixed, g)
    final = {v: full[v] for v in original.variables}
    ok = is_solution(original, final)
    stage("map-back", "solution of the original system", ok=ok, assignment={v: g.format(x) for v, x in final.items()})
    return RoundTripResult(ok, final, stages, (time.perf_counter() - t0) * 1000.0)


__all__ = [
    "ObservationResult",
    "observation_equation",
    "decompose",
    "MainS1",
    "build_main_s1",
    "build_main_s2",
    "residues",
    "q_correct",
    "SmLResult",
    "build_sml_s1",
    "lee_collapse",
    "LeeCandidate",
    "check_lee_properties",
    "RoundTripConfig",
    "RoundTripResult",
    "run_main_theorem_round_trip",
]
