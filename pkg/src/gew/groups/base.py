"""The group contract and the generic algorithms built on it (powers, balls, geodesics)."""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import Any, Hashable, Iterable, Sequence

from ..errors import GroupMismatchError, UnsupportedEnumerationError

Element = Any


class Group(ABC):
    """A concrete group with an exactly decidable word problem.

    Elements are plain immutable Python values. When :attr:`canonical` is
    true, ``==`` on elements coincides with equality in the group and
    elements can be used directly as dictionary keys; otherwise callers must
    go through :meth:`equal` and may only use :meth:`bucket` for hashing.
    """

    canonical: bool = True

    @abstractmethod
    def identity(self) -> Element: ...

    @abstractmethod
    def mul(self, x: Element, y: Element) -> Element: ...

    @abstractmethod
    def inv(self, x: Element) -> Element: ...

    @abstractmethod
    def contains(self, x: Element) -> bool: ...

    @abstractmethod
    def generators(self) -> dict[str, Element]:
        """Named generators, as used by the text grammar."""

    @abstractmethod
    def format(self, x: Element) -> str:
        """Text for ``x`` that parses back to an equal element."""

    @abstractmethod
    def describe(self) -> str:
        """Group description in the textual description format."""

    def equal(self, x: Element, y: Element) -> bool:
        return x == y

    def is_identity(self, x: Element) -> bool:
        return self.equal(x, self.identity())

    def bucket(self, x: Element) -> Hashable:
        """Hash key invariant under group equality (the element itself when canonical)."""
        return x

    def power(self, x: Element, k: int) -> Element:
        if k < 0:
            x = self.inv(x)
            k = -k
        result = self.identity()
        while k:
            if k & 1:
                result = self.mul(result, x)
            k >>= 1
            if k:
                x = self.mul(x, x)
        return result

    def order(self, x: Element) -> int | None:
        """Order of ``x``; ``None`` for infinite order."""
        size = self.size()
        if size is None:
            raise NotImplementedError(f"element orders not implemented for {self.describe()}")
        y = x
        for k in range(1, size + 1):
            if self.is_identity(y):
                return k
            y = self.mul(y, x)
        raise AssertionError("order exceeds group size")

    def size(self) -> int | None:
        """Group order, ``None`` when infinite."""
        return None

    def is_abelian(self) -> bool:
        return False

    def enumerable(self, gens: Sequence[Element]) -> bool:
        """Whether balls over ``gens`` can be enumerated."""
        return True

    def elements(self) -> list[Element]:
        """All elements of a finite group, in a deterministic order."""
        if self.size() is None:
            raise UnsupportedEnumerationError(f"{self.describe()} is infinite")
        gens = list(self.generators().values())
        gs = GeneratingSet.closure(self, gens)
        return ball(self, gs, self.size())

    def check(self, *xs: Element) -> None:
        for x in xs:
            if not self.contains(x):
                raise GroupMismatchError(f"{x!r} is not an element of {self.describe()}")

    def __str__(self) -> str:
        return self.describe()


class GeneratingSet:
    """A symmetric list ``U = U^-1`` of group elements."""

    def __init__(self, group: Group, elements: Iterable[Element]):
        elems = tuple(elements)
        group.check(*elems)
        for u in elems:
            ui = group.inv(u)
            if not any(group.equal(ui, v) for v in elems):
                raise ValueError(f"generating set is not symmetric: inverse of {group.format(u)} missing")
        self.group = group
        self.elements = elems

    @classmethod
    def closure(cls, group: Group, elements: Iterable[Element]) -> "GeneratingSet":
        """Add inverses (and drop duplicates), keeping first-seen order."""
        out: list[Element] = []
        for u in elements:
            for v in (u, group.inv(u)):
                if not any(group.equal(v, w) for w in out):
                    out.append(v)
        return cls(group, out)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


def _as_tuple(gens) -> tuple:
    return tuple(gens.elements) if isinstance(gens, GeneratingSet) else tuple(gens)


class _Seen:
    """Equality-respecting membership set, bucketed by :meth:`Group.bucket`."""

    def __init__(self, group: Group):
        self.group = group
        self.buckets: dict[Hashable, list] = {}

    def find(self, x):
        for y, payload in self.buckets.get(self.group.bucket(x), ()):
            if self.group.canonical or self.group.equal(x, y):
                return y, payload
        return None

    def add(self, x, payload=None) -> bool:
        if self.find(x) is not None:
            return False
        self.buckets.setdefault(self.group.bucket(x), []).append((x, payload))
        return True


def ball_with_lengths(group: Group, gens, radius: int) -> list[tuple[Element, int]]:
    """Breadth-first ball: ``(element, word length)`` pairs, deduplicated by equality."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    gens = _as_tuple(gens)
    if radius > 0 and not group.enumerable(gens):
        raise UnsupportedEnumerationError(f"cannot enumerate balls of {group.describe()} over these generators")
    seen = _Seen(group)
    e = group.identity()
    seen.add(e)
    out = [(e, 0)]
    frontier = [e]
    for dist in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for u in gens:
                y = group.mul(x, u)
                if seen.add(y):
                    nxt.append(y)
                    out.append((y, dist))
        if not nxt:
            break
        frontier = nxt
    return out


def ball(group: Group, gens, radius: int) -> list[Element]:
    """All products of at most ``radius`` generators, in breadth-first order."""
    return [x for x, _ in ball_with_lengths(group, gens, radius)]


def geodesic(group: Group, gens, target: Element, radius: int) -> list[Element] | None:
    """A shortest product of generators equal to ``target`` (``[]`` for the identity)."""
    gens = _as_tuple(gens)
    if group.is_identity(target):
        return []
    seen = _Seen(group)
    e = group.identity()
    seen.add(e, None)
    frontier = [e]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for u in gens:
                y = group.mul(x, u)
                if seen.add(y, (x, u)):
                    nxt.append(y)
                    if group.equal(y, target):
                        path = [u]
                        node = x
                        while True:
                            _, parent = seen.find(node)
                            if parent is None:
                                break
                            node, v = parent
                            path.append(v)
                        return path[::-1]
        if not nxt:
            break
        frontier = nxt
    return None


# -- module-level contract ---------------------------------------------------

def mul(group: Group, x: Element, y: Element) -> Element:
    group.check(x, y)
    return group.mul(x, y)


def inv(group: Group, x: Element) -> Element:
    group.check(x)
    return group.inv(x)


def identity(group: Group) -> Element:
    return group.identity()


def equal(group: Group, x: Element, y: Element) -> bool:
    group.check(x, y)
    return group.equal(x, y)


def power(group: Group, x: Element, k: int) -> Element:
    group.check(x)
    return group.power(x, k)


def commutator(group: Group, x: Element, y: Element) -> Element:
    """``[x, y] = x^-1 y^-1 x y``."""
    return group.mul(group.mul(group.inv(x), group.inv(y)), group.mul(x, y))


def conjugate(group: Group, x: Element, s: Element) -> Element:
    """``x^s = s^-1 x s``."""
    return group.mul(group.mul(group.inv(s), x), s)


def lcm_or_none(values: Iterable[int | None]) -> int | None:
    acc = 1
    for v in values:
        if v is None:
            return None
        acc = math.lcm(acc, v)
    return acc
