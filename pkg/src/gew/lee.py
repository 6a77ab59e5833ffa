"""Property checker for Lee-word candidates over a free group of small rank."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .freewords import (
    IDENTITY,
    ReducedWord,
    canonical_root,
    conjugate,
    conjugator,
    cyclic_reduction,
    free_ball,
    primitive_root,
)


@dataclass(frozen=True)
class LeeCandidate:
    word: ReducedWord
    arity: int

    def __post_init__(self):
        if self.word.generators() and max(self.word.generators()) >= self.arity:
            raise ValueError("candidate uses more variables than its arity")

    @property
    def names(self) -> list[str]:
        return [f"z{i + 1}" for i in range(self.arity)]

    def evaluate(self, values: Sequence[ReducedWord]) -> ReducedWord:
        if len(values) != self.arity:
            raise ValueError(f"candidate has arity {self.arity}")
        acc = IDENTITY
        for g, e in self.word.syllables:
            acc = acc * values[g] ** e
        return acc

    def format(self) -> str:
        return self.word.format(self.names)

    @classmethod
    def parse(cls, text: str, arity: int | None = None) -> "LeeCandidate":
        import re

        from .parsing import parse_word

        w, found = parse_word(text)
        index = []
        for name in found:
            m = re.fullmatch(r"z(\d+)", name)
            if m is None or m.group(1) == "0":
                raise ValueError(f"candidate variables are z1, z2, ...; got {name!r}")
            index.append(int(m.group(1)) - 1)
        word = ReducedWord.from_syllables((index[g], e) for g, e in w.syllables)
        n = max(index, default=-1) + 1
        return cls(word, max(n, arity or 0))


def generates_cyclic(vs: Sequence[ReducedWord]) -> bool:
    """Free-group test: nontrivial entries share one canonical primitive root."""
    roots = {canonical_root(v) for v in vs if not v.is_identity()}
    return len(roots) <= 1


def _conj_range(v: ReducedWord, target: ReducedWord, c: ReducedWord) -> range:
    # |c^-k v c^k| >= 2|k||c| - 2|v| - 4|c| once v is outside <c>
    bound = (len(target) + 2 * len(v) + 4 * len(c)) // max(1, 2 * len(c)) + 2
    return range(-bound, bound + 1)


def simultaneous_conjugator(vs: Sequence[ReducedWord], ws: Sequence[ReducedWord]) -> ReducedWord | None:
    """Exact search for ``s`` with ``s^-1 v_i s == w_i`` for all ``i``.

    Fix one nontrivial ``v_i``; every conjugator of it to ``w_i`` is
    ``r^k s0`` with ``r`` its primitive root. Components commuting with ``r``
    give ``k``-independent conditions; the others bound ``|k|`` by length.
    """
    if len(vs) != len(ws):
        raise ValueError("tuples differ in length")
    pivot = next((i for i, v in enumerate(vs) if not v.is_identity()), None)
    if pivot is None:
        return IDENTITY if all(w.is_identity() for w in ws) else None
    s0 = conjugator(vs[pivot], ws[pivot])
    if s0 is None:
        return None
    r, _ = primitive_root(vs[pivot])
    p, c = cyclic_reduction(r)
    ks = None
    for v, w in zip(vs, ws):
        t = s0 * w * s0.inverse()  # need r^-k v r^k == t
        if v * r == r * v:
            if v != t:
                return None
            continue
        vp, tp = conjugate(v, p), conjugate(t, p)
        good = {k for k in _conj_range(vp, tp, c) if conjugate(vp, c ** k) == tp}
        ks = good if ks is None else ks & good
        if not ks:
            return None
    k = 0 if ks is None else min(ks, key=lambda k: (abs(k), k))
    s = r ** k * s0
    assert all(conjugate(v, s) == w for v, w in zip(vs, ws))
    return s


def ball_conjugator(vs, ws, pts) -> ReducedWord | None:
    """Independent oracle: first ``s`` in ``pts`` conjugating every ``v_i`` to ``w_i``."""
    for s in pts:
        if all(conjugate(v, s) == w for v, w in zip(vs, ws)):
            return s
    return None


@dataclass
class LeeReport:
    candidate: LeeCandidate
    radius: int
    rank: int
    names: tuple
    tuples_checked: int = 0
    l1_counterexamples: list = field(default_factory=list)
    l2_counterexamples: list = field(default_factory=list)
    conjugator_radius: int = 0
    elapsed_ms: float = 0.0

    def reverify(self) -> bool:
        """Re-evaluate every counterexample from scratch."""
        L = self.candidate
        pts = free_ball(self.rank, self.conjugator_radius)
        for vs, ws in self.l1_counterexamples:
            a, b = L.evaluate(vs), L.evaluate(ws)
            if a != b or a.is_identity():
                return False
            if simultaneous_conjugator(vs, ws) is not None or ball_conjugator(vs, ws, pts) is not None:
                return False
        for vs in self.l2_counterexamples:
            if L.evaluate(vs).is_identity() == generates_cyclic(vs):
                return False
        return True

    def to_json(self, limit: int = 20, timings: bool = True) -> dict:
        fmt = lambda vs: [v.format(list(self.names)) for v in vs]  # noqa: E731
        out = {
            "candidate": self.candidate.format(),
            "radius": self.radius,
            "rank": self.rank,
            "tuples_checked": self.tuples_checked,
            "conjugator_radius": self.conjugator_radius,
            "l1_count": len(self.l1_counterexamples),
            "l2_count": len(self.l2_counterexamples),
            "l1_counterexamples": [[fmt(a), fmt(b)] for a, b in self.l1_counterexamples[:limit]],
            "l2_counterexamples": [fmt(v) for v in self.l2_counterexamples[:limit]],
        }
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def check_lee_properties(
    L: LeeCandidate,
    radius: int,
    rank: int = 2,
    names: Sequence[str] = ("a", "b"),
    conjugator_radius: int | None = None,
) -> LeeReport:
    """Enumerate tuples over the free ball and collect L1/L2 counterexamples.

    L1 pairs are certified by the exact conjugator test and cross-checked
    by exhaustive search over a ball of ``conjugator_radius``.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    t0 = time.perf_counter()
    pts = free_ball(rank, radius)
    if conjugator_radius is None:
        conjugator_radius = 2 * radius
    cpts = free_ball(rank, conjugator_radius)
    rep = LeeReport(L, radius, rank, tuple(names), conjugator_radius=conjugator_radius)
    by_value: dict[ReducedWord, list] = {}
    for vs in product(pts, repeat=L.arity):
        rep.tuples_checked += 1
        val = L.evaluate(vs)
        if val.is_identity() != generates_cyclic(vs):
            rep.l2_counterexamples.append(vs)
        if not val.is_identity():
            by_value.setdefault(val, []).append(vs)
    for val in sorted(by_value, key=ReducedWord.sort_key):
        group = by_value[val]
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                vs, ws = group[i], group[j]
                if simultaneous_conjugator(vs, ws) is None:
                    if ball_conjugator(vs, ws, cpts) is not None:
                        raise AssertionError("exact conjugacy test disagrees with ball search")
                    rep.l1_counterexamples.append((vs, ws))
    rep.elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return rep


__all__ = [
    "LeeCandidate",
    "LeeReport",
    "check_lee_properties",
    "simultaneous_conjugator",
    "ball_conjugator",
    "generates_cyclic",
]
