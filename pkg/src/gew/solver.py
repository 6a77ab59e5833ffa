"""Bounded brute-force search for solutions inside Cayley balls."""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

from .eqsys import EquationSystem
from .errors import PreconditionError
from .groups import DirectProduct, Group, ball_with_lengths


@dataclass
class SearchReport:
    system: EquationSystem
    solutions: list[dict]
    radius: int
    exhaustive: bool
    ball_size: int = 0
    elapsed_ms: float = 0.0
    lengths: list[int] = field(default_factory=list)

    def to_json(self, timings: bool = True) -> dict:
        g = self.system.group
        out = {
            "solutions": [{v: g.format(a[v]) for v in self.system.variables} for a in self.solutions],
            "radius": self.radius,
            "exhaustive": self.exhaustive,
            "ball_size": self.ball_size,
        }
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def _threads(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    try:
        return max(1, int(os.environ.get("GEW_THREADS", "1")))
    except ValueError:
        return 1


def _schedule(system: EquationSystem):
    """Equations grouped by the position of their last variable (-1: variable-free)."""
    pos = {v: i for i, v in enumerate(system.variables)}
    buckets: dict[int, list] = {}
    for eq in system.equations:
        last = max((pos[v] for v in eq.lhs.variables()), default=-1)
        buckets.setdefault(last, []).append(eq)
    return buckets


def solve_bounded(system: EquationSystem, U, radius: int, workers: int | None = None) -> SearchReport:
    """Every assignment with all values in ``ball(G, U, radius)`` that satisfies ``system``.

    Solutions come sorted by total word length, then by ball index.
    """
    t0 = time.perf_counter()
    g = system.group
    elems = ball_with_lengths(g, U, radius)
    size = g.size()
    exhaustive = size is not None and len(elems) == size
    names = list(system.variables)
    checks = _schedule(system)

    def holds(eqs, assignment):
        return all(g.equal(eq.lhs.evaluate(assignment, g), eq.rhs) for eq in eqs)

    found: list[tuple] = []
    if holds(checks.get(-1, ()), {}):
        def dfs(k, assignment, idx, acc):
            if k == len(names):
                acc.append((sum(elems[i][1] for i in idx), tuple(idx), dict(assignment)))
                return
            eqs = checks.get(k, ())
            for i, (x, _) in enumerate(elems):
                assignment[names[k]] = x
                if holds(eqs, assignment):
                    idx.append(i)
                    dfs(k + 1, assignment, idx, acc)
                    idx.pop()
            assignment.pop(names[k], None)

        if not names:
            found.append((0, (), {}))
        elif _threads(workers) == 1:
            dfs(0, {}, [], found)
        else:
            def branch(i):
                x = elems[i][0]
                acc: list = []
                a = {names[0]: x}
                if holds(checks.get(0, ()), a):
                    dfs(1, a, [i], acc)
                return acc

            with ThreadPoolExecutor(max_workers=_threads(workers)) as pool:
                for part in pool.map(branch, range(len(elems))):
                    found.extend(part)
    found.sort(key=lambda t: (t[0], t[1]))
    return SearchReport(
        system=system,
        solutions=[a for _, _, a in found],
        radius=radius,
        exhaustive=exhaustive,
        ball_size=len(elems),
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
        lengths=[n for n, _, _ in found],
    )


def quotient_group(group: Group) -> Group:
    """``K`` for ``group = Direct(..., Q, ...)`` with a designated rational factor ``Q``."""
    qi = getattr(group, "q_index", None)
    if not isinstance(group, DirectProduct) or qi is None:
        raise PreconditionError(f"{group.describe()} has no designated rational factor")
    rest = tuple(f for i, f in enumerate(group.factors) if i != qi)
    if not rest:
        raise PreconditionError("nothing left after removing the rational factor")
    return rest[0] if len(rest) == 1 else DirectProduct(rest)


def quotient_by_q(group: Group, x):
    """Drop the rational component of ``x``."""
    quotient_group(group)
    qi = group.q_index
    rest = tuple(a for i, a in enumerate(x) if i != qi)
    return rest[0] if len(rest) == 1 else rest


def lift_from_k(group: DirectProduct, k, q=None):
    """Element of ``group`` with K-part ``k`` and rational part ``q`` (default zero)."""
    qi = group.q_index
    quotient_group(group)
    parts = [k] if len(group.factors) == 2 else list(k)
    parts.insert(qi, group.factors[qi].identity() if q is None else q)
    return tuple(parts)


def _same_assignment(group: Group, a: Mapping, b: Mapping, variables) -> bool:
    return all(group.equal(a[v], b[v]) for v in variables)


def unique_in_ball(system: EquationSystem, U, radius: int, expected: Mapping) -> bool:
    """Whether the bounded search returns exactly ``expected`` (modulo Q when present)."""
    rep = solve_bounded(system, U, radius)
    g = system.group
    if isinstance(g, DirectProduct) and g.q_index is not None:
        kq = quotient_group(g)
        proj = lambda a: {v: quotient_by_q(g, a[v]) for v in system.variables}  # noqa: E731
        want = proj(expected)
        return bool(rep.solutions) and all(
            _same_assignment(kq, proj(s), want, system.variables) for s in rep.solutions
        )
    return len(rep.solutions) == 1 and _same_assignment(g, rep.solutions[0], expected, system.variables)


__all__ = [
    "SearchReport",
    "solve_bounded",
    "unique_in_ball",
    "quotient_group",
    "quotient_by_q",
    "lift_from_k",
]
