"""Laws, verbal subgroups with witnesses, and the checks built on them."""

from __future__ import annotations

import math
import re
import time
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Sequence

from .eqsys import MixedWord, Var
from .errors import DihedralError, PreconditionError, UnwitnessedError
from .freewords import ReducedWord, exponent_vector, left_normed_commutator
from .groups import (
    FreeProduct,
    GeneratingSet,
    Group,
    ball,
    commutator,
    free_product_projection,
)
from .groups.base import _Seen
from .report import Report, status_of


@dataclass(frozen=True)
class LawWord:
    word: ReducedWord
    arity: int

    def __post_init__(self):
        if self.word.generators() and max(self.word.generators()) >= self.arity:
            raise ValueError("law uses more variables than its arity")

    @property
    def names(self) -> list[str]:
        return [f"t{i + 1}" for i in range(self.arity)]

    def exponent_gcd(self) -> int:
        """``d`` with ``I(<x>) = <x^d>`` in an infinite cyclic group."""
        return math.gcd(*exponent_vector(self.word).values()) if self.word.syllables else 0

    def format(self) -> str:
        return self.word.format(self.names)

    @classmethod
    def parse(cls, text: str) -> "LawWord":
        """Parse a law over ``t1, t2, ...`` (a bare ``t`` means ``t1``)."""
        from .parsing import parse_word

        w, found = parse_word(text)
        index = []
        for name in found:
            m = re.fullmatch(r"t(\d*)", name)
            if m is None or m.group(1) == "0":
                raise ValueError(f"law variables are t1, t2, ...; got {name!r}")
            index.append(int(m.group(1) or 1) - 1)
        word = ReducedWord.from_syllables((index[g], e) for g, e in w.syllables)
        return cls(word, max(index, default=-1) + 1)


def law_evaluate(law: LawWord, group: Group, values: Sequence) -> object:
    if len(values) != law.arity:
        raise ValueError(f"law has arity {law.arity}, got {len(values)} values")
    acc = group.identity()
    for g, e in law.word.syllables:
        acc = group.mul(acc, group.power(values[g], e))
    return acc


def law_holds(law: LawWord, group: Group, samples=None) -> bool:
    """Exhaustive over finite groups, otherwise over ``samples`` tuples."""
    if samples is None:
        samples = product(group.elements(), repeat=law.arity)
    return all(group.is_identity(law_evaluate(law, group, t)) for t in samples)


@dataclass(frozen=True)
class Witness:
    """``element`` written as a product of law values ``I(tuple)^sign``."""

    element: object
    terms: tuple = ()

    def evaluate(self, group: Group, law: LawWord):
        acc = group.identity()
        for tup, sign in self.terms:
            acc = group.mul(acc, group.power(law_evaluate(law, group, tup), sign))
        return acc

    def verify(self, group: Group, law: LawWord) -> bool:
        return group.equal(self.evaluate(group, law), self.element)

    def to_json(self, group: Group, law: LawWord) -> dict:
        return {
            "element": group.format(self.element),
            "terms": [
                {"tuple": [group.format(x) for x in tup], "sign": s} for tup, s in self.terms
            ],
            "law": law.format(),
        }


def iter_verbal_ball(group: Group, law: LawWord, U, radius: int, length: int) -> Iterator[Witness]:
    """Lazily yield distinct elements of the verbal ball with witnesses.

    Order: identity, then products of 1, 2, ... law values, each level in
    ball order of the tuples.
    """
    seen = _Seen(group)
    e = group.identity()
    seen.add(e)
    yield Witness(e, ())
    if length < 1:
        return
    pts = ball(group, U, radius)
    values: list[Witness] = []
    value_seen = _Seen(group)
    for tup in product(pts, repeat=law.arity):
        v = law_evaluate(law, group, tup)
        for sign, x in ((1, v), (-1, group.inv(v))):
            if group.is_identity(x) or not value_seen.add(x):
                continue
            w = Witness(x, ((tup, sign),))
            values.append(w)
            if seen.add(x):
                yield w
    frontier = values
    for _ in range(1, length):
        nxt = []
        for base in frontier:
            for v in values:
                x = group.mul(base.element, v.element)
                if seen.add(x):
                    w = Witness(x, base.terms + v.terms)
                    nxt.append(w)
                    yield w
        if not nxt:
            break
        frontier = nxt


def verbal_ball(group: Group, law: LawWord, U, radius: int, length: int) -> list[Witness]:
    return list(iter_verbal_ball(group, law, U, radius, length))


def find_witness(group: Group, law: LawWord, U, target, radius: int, length: int) -> Witness | None:
    for w in iter_verbal_ball(group, law, U, radius, length):
        if group.equal(w.element, target):
            return w
    return None


def build_free_product_law(laws: Sequence[LawWord]) -> LawWord:
    """Rename the laws onto disjoint variables and take their left-normed commutator."""
    if len(laws) < 2:
        raise ValueError("need at least two laws")
    parts = []
    offset = 0
    for law in laws:
        parts.append(ReducedWord(tuple((g + offset, e) for g, e in law.word.syllables)))
        offset += law.arity
    return LawWord(left_normed_commutator(parts), offset)


# -- E-word templates -----------------------------------------------------------


@dataclass(frozen=True)
class EWordTemplate:
    """Mixed word in the single variable ``x`` whose constants carry witnesses."""

    word: MixedWord
    witnesses: tuple = ()
    var: str = "x"

    def __post_init__(self):
        extra = set(self.word.variables()) - {self.var}
        if extra:
            raise ValueError(f"template may only use ?{self.var}, found {sorted(extra)}")

    def instantiate(self, value: MixedWord, group: Group) -> MixedWord:
        return self.word.substitute({self.var: value}, group)

    def evaluate(self, group: Group, x):
        return self.word.evaluate({self.var: x}, group)

    def format(self, group: Group) -> str:
        return self.word.format(group)


def witness_template(group: Group, law: LawWord, U, word: MixedWord, radius: int = 2, length: int = 1) -> EWordTemplate:
    """Attach a witness to every constant of ``word``; raise UnwitnessedError otherwise."""
    wits = []
    for c in word.constants():
        if any(group.equal(w.element, c) for w in wits):
            continue
        w = find_witness(group, law, U, c, radius, length)
        if w is None:
            raise UnwitnessedError(f"constant {group.format(c)} not found in the verbal ball")
        wits.append(w)
    return EWordTemplate(word, tuple(wits))


def e_word_membership(template: EWordTemplate, law: LawWord, group: Group) -> bool:
    """Decide ``E in I(<x>) * I(H)^(<x> * I(H))`` for a template with witnessed constants."""
    for c in template.word.constants():
        if not any(group.equal(w.element, c) and w.verify(group, law) for w in template.witnesses):
            raise UnwitnessedError(f"constant {group.format(c)} has no valid witness")
    e = sum(it.exp for it in template.word.items if isinstance(it, Var))
    d = law.exponent_gcd()
    return e == 0 if d == 0 else e % d == 0


# -- desk checks --------------------------------------------------------------------


def _common_centralizer(group: Group, fs, pts):
    return [x for x in pts if all(group.is_identity(commutator(group, f, x)) for f in fs)]


def check_corollary3(
    H: Group,
    law: LawWord,
    fs: Sequence,
    U,
    radius: int,
    witnesses: Sequence[Witness] | None = None,
    center: Callable | None = None,
    witness_radius: int | None = None,
    witness_length: int = 2,
) -> Report:
    """Compare the common centralizer of ``fs`` inside a ball with the declared center.

    ``center`` is a predicate; by default it is the whole group for abelian
    ``H`` and the identity alone otherwise.
    """
    t0 = time.perf_counter()
    if witnesses is None:
        witnesses = []
        for f in fs:
            w = find_witness(H, law, U, f, witness_radius or radius, witness_length)
            if w is None:
                raise UnwitnessedError(f"{H.format(f)} not found in the verbal ball")
            witnesses.append(w)
    for f, w in zip(fs, witnesses):
        if not (H.equal(w.element, f) and w.verify(H, law)):
            raise UnwitnessedError(f"bad witness for {H.format(f)}")
    if center is None:
        center = (lambda x: True) if H.is_abelian() else H.is_identity
    pts = ball(H, U, radius)
    cent = _common_centralizer(H, fs, pts)
    expected = [x for x in pts if center(x)]
    ok = len(cent) == len(expected) and all(any(H.equal(x, y) for y in expected) for x in cent)
    return Report(
        name="common centralizer equals center",
        status=status_of(ok),
        source="verbal-subgroup centralizer criterion",
        details={
            "group": H.describe(),
            "law": law.format(),
            "fs": [H.format(f) for f in fs],
            "witnesses": [w.to_json(H, law) for w in witnesses],
            "radius": radius,
            "ball_size": len(pts),
            "centralizer": [H.format(x) for x in cent],
            "center_in_ball": [H.format(x) for x in expected],
        },
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def check_corollary4(factors: Sequence[Group], laws: Sequence[LawWord], radius: int, length: int = 1) -> Report:
    """Search the verbal ball of a free product for a pair with trivial common centralizer."""
    t0 = time.perf_counter()
    if len(factors) < 2 or len(factors) != len(laws):
        raise PreconditionError("need at least two factors, one law each")
    for f in factors:
        if f.size() == 1:
            raise PreconditionError(f"factor {f.describe()} is trivial")
    H = FreeProduct(tuple(factors))
    if H.is_dihedral():
        raise DihedralError("Z2*Z2 is the infinite dihedral group; the check does not apply")
    for f, law in zip(factors, laws):
        if f.size() is not None and not law_holds(law, f):
            raise PreconditionError(f"{f.describe()} does not satisfy {law.format()}")
    law = build_free_product_law(laws)
    U = GeneratingSet.closure(H, H.generators().values())
    pts = ball(H, U, radius)
    cands: list[Witness] = []
    pair = None
    for w in iter_verbal_ball(H, law, U, radius, length):
        if H.is_identity(w.element):
            continue
        for v in cands:
            if H.is_identity(commutator(H, v.element, w.element)):
                continue
            if _common_centralizer(H, [v.element, w.element], pts) == [H.identity()]:
                pair = (v, w)
                break
        if pair:
            break
        cands.append(w)
    details = {
        "group": H.describe(),
        "law": law.format(),
        "radius": radius,
        "ball_size": len(pts),
        "examined": len(cands) + (1 if pair else 0),
    }
    ok = False
    if pair is not None:
        f1, f2 = pair[0].element, pair[1].element
        checks = {
            "witnesses_verify": pair[0].verify(H, law) and pair[1].verify(H, law),
            "noncommuting": not H.is_identity(commutator(H, f1, f2)),
            "f1_cartesian": H.in_cartesian(f1),
            "f2_cartesian": H.in_cartesian(f2),
            "projections": [H.direct_target().format(free_product_projection(H, f)) for f in (f1, f2)],
            "centralizer_trivial": _common_centralizer(H, [f1, f2], pts) == [H.identity()],
        }
        ok = all(v for k, v in checks.items() if k != "projections")
        details.update(
            f1=pair[0].to_json(H, law),
            f2=pair[1].to_json(H, law),
            checks=checks,
        )
    return Report(
        name=f"free product {H.describe()}",
        status=status_of(ok),
        source="free-product verbal pair",
        details=details,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


__all__ = [
    "LawWord",
    "Witness",
    "EWordTemplate",
    "law_evaluate",
    "law_holds",
    "iter_verbal_ball",
    "verbal_ball",
    "find_witness",
    "build_free_product_law",
    "witness_template",
    "e_word_membership",
    "check_corollary3",
    "check_corollary4",
]
