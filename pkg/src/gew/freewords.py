"""Freely reduced words over an unbounded alphabet of indexed generators.

A :class:`ReducedWord` is stored run-length compressed as a tuple of
``(generator, exponent)`` syllables; since the compressed reduced form is
unique, equality and hashing work directly on it. Large powers such as
``b^4000`` therefore cost one syllable.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import _kernels

__all__ = [
    "ReducedWord",
    "IDENTITY",
    "gen",
    "reduce",
    "multiply",
    "invert",
    "conjugate",
    "commutator",
    "left_normed_commutator",
    "exponent_vector",
    "is_in_derived",
    "cyclic_reduction",
    "primitive_root",
    "canonical_root",
    "free_ball",
    "ball_centralizer",
    "are_conjugate",
    "conjugator",
    "default_names",
]


class ReducedWord:
    """Element of a free group in reduced run-length form.

    Build words with :func:`gen`, :func:`reduce` or :meth:`from_letters`;
    the constructor trusts its input and is meant for internal use.
    """

    __slots__ = ("syllables", "_hash")

    def __init__(self, syllables: tuple = ()):
        self.syllables = syllables
        self._hash = None

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[int, int]]) -> "ReducedWord":
        """Reduce a sequence of ``(generator, sign)`` letters."""
        return cls(_kernels.reduce_syllables(tuple(letters)))

    @classmethod
    def from_syllables(cls, pairs: Iterable[tuple[int, int]]) -> "ReducedWord":
        return cls(_kernels.reduce_syllables(tuple(pairs)))

    @classmethod
    def from_signed(cls, letters: Iterable[int]) -> "ReducedWord":
        """Inverse of :meth:`signed_letters`."""
        return cls.from_letters((abs(a) - 1, 1 if a > 0 else -1) for a in letters)

    # -- group structure -------------------------------------------------

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return ReducedWord(_kernels.mul_syllables(self.syllables, other.syllables))

    def inverse(self) -> "ReducedWord":
        return ReducedWord(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __invert__(self) -> "ReducedWord":
        return self.inverse()

    def __pow__(self, k: int) -> "ReducedWord":
        if k == 0 or not self.syllables:
            return IDENTITY
        if k < 0:
            return self.inverse() ** (-k)
        syl = self.syllables
        if len(syl) == 1:
            g, e = syl[0]
            return ReducedWord(((g, e * k),))
        k0, core = cyclic_reduction(self)
        if k0.syllables:
            return k0 * (core ** k) * k0.inverse()
        # cyclically reduced: only the seam between copies can merge
        out = ReducedWord(syl)
        result = IDENTITY
        base = out
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, ReducedWord) and self.syllables == other.syllables

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.syllables)
        return self._hash

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def letters(self) -> tuple[tuple[int, int], ...]:
        """Expanded ``(generator, sign)`` letters."""
        out = []
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return tuple(out)

    def signed_letters(self) -> tuple[int, ...]:
        """Letters encoded as ``g + 1`` / ``-(g + 1)``."""
        out = []
        for g, e in self.syllables:
            a = g + 1 if e > 0 else -(g + 1)
            out.extend([a] * abs(e))
        return tuple(out)

    def generators(self) -> set[int]:
        return {g for g, _ in self.syllables}

    def sort_key(self) -> tuple:
        """Shortlex key; ``g`` sorts before ``g^-1`` before ``g+1``."""
        return (len(self), tuple(2 * abs(a) + (a < 0) for a in self.signed_letters()))

    def __lt__(self, other: "ReducedWord") -> bool:
        return self.sort_key() < other.sort_key()

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.syllables:
            return "1"
        parts = []
        for g, e in self.syllables:
            name = names[g] if names is not None and g < len(names) else f"x{g}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"ReducedWord({self.format()})"

    def __str__(self) -> str:
        return self.format()


IDENTITY = ReducedWord(())


def default_names(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)]


def gen(index: int, power: int = 1) -> ReducedWord:
    if index < 0:
        raise ValueError("generator index must be nonnegative")
    return ReducedWord(((index, power),)) if power else IDENTITY


def reduce(raw: Iterable[tuple[int, int]]) -> ReducedWord:
    """Free reduction of a raw sequence of signed generators.

    >>> reduce([(0, 1), (0, -1), (1, 1)]).format(["b", "c"])
    'c'
    """
    return ReducedWord.from_letters(raw)


def multiply(u: ReducedWord, v: ReducedWord) -> ReducedWord:
    return u * v


def invert(u: ReducedWord) -> ReducedWord:
    return u.inverse()


def conjugate(u: ReducedWord, s: ReducedWord) -> ReducedWord:
    """``u^s = s^-1 u s``."""
    return s.inverse() * u * s


def commutator(u: ReducedWord, v: ReducedWord) -> ReducedWord:
    """``[u, v] = u^-1 v^-1 u v``."""
    return u.inverse() * v.inverse() * u * v


def left_normed_commutator(ws: Sequence[ReducedWord]) -> ReducedWord:
    if len(ws) < 2:
        raise ValueError("left-normed commutator needs at least two entries")
    acc = ws[0]
    for w in ws[1:]:
        acc = commutator(acc, w)
    return acc


def exponent_vector(w: ReducedWord) -> dict[int, int]:
    """Per-generator exponent sums, zero entries omitted."""
    acc: dict[int, int] = {}
    for g, e in w.syllables:
        acc[g] = acc.get(g, 0) + e
    return {g: e for g, e in sorted(acc.items()) if e}


def is_in_derived(w: ReducedWord) -> bool:
    return not exponent_vector(w)


def cyclic_reduction(w: ReducedWord) -> tuple[ReducedWord, ReducedWord]:
    """Return ``(p, c)`` with ``w = p c p^-1`` and ``c`` cyclically reduced."""
    letters = w.signed_letters()
    k, core = _kernels.cyclic_core(letters)
    return ReducedWord.from_signed(letters[:k]), ReducedWord.from_signed(core)


def primitive_root(w: ReducedWord) -> tuple[ReducedWord, int]:
    """Return ``(root, k)`` with ``w == root**k``, ``k`` maximal and positive."""
    if w.is_identity():
        raise ValueError("the identity has no primitive root")
    p, c = cyclic_reduction(w)
    letters = c.signed_letters()
    n = len(letters)
    for d in range(1, n + 1):
        if n % d:
            continue
        block = letters[:d]
        if block * (n // d) == letters:
            r = ReducedWord.from_signed(block)
            return p * r * p.inverse(), n // d
    raise AssertionError("unreachable")


def canonical_root(w: ReducedWord) -> ReducedWord:
    """Primitive root normalized between ``r`` and ``r^-1`` by shortlex order."""
    r, _ = primitive_root(w)
    ri = r.inverse()
    return r if r.sort_key() <= ri.sort_key() else ri


def free_ball(rank: int, radius: int) -> list[ReducedWord]:
    """Words of length at most ``radius`` in ``F_rank``, breadth-first, shortlex within a sphere."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    letters = []
    for g in range(rank):
        letters.append((g, 1))
        letters.append((g, -1))
    out = [IDENTITY]
    sphere = [IDENTITY]
    for _ in range(radius):
        nxt = []
        for w in sphere:
            last = w.letters()[-1] if w.syllables else None
            for g, s in letters:
                if last == (g, -s):
                    continue
                nxt.append(w * gen(g, s))
        sphere = nxt
        out.extend(nxt)
    return out


def ball_centralizer(w: ReducedWord, radius: int, rank: int | None = None) -> list[ReducedWord]:
    """All words of length at most ``radius`` commuting with ``w``.

    ``rank`` defaults to the larger of 2 and the highest generator used.
    """
    if w.is_identity():
        raise ValueError("centralizer of the identity is the whole group")
    if rank is None:
        rank = max(2, max(w.generators()) + 1)
    return [v for v in free_ball(rank, radius) if (w * v) == (v * w)]


def conjugator(u: ReducedWord, v: ReducedWord) -> ReducedWord | None:
    """Some ``s`` with ``s^-1 u s == v``, or ``None`` when not conjugate."""
    if u.is_identity() or v.is_identity():
        return IDENTITY if u == v else None
    p, a = cyclic_reduction(u)
    q, b = cyclic_reduction(v)
    al, bl = a.signed_letters(), b.signed_letters()
    if len(al) != len(bl):
        return None
    n = len(al)
    for i in range(n):
        if al[i:] + al[:i] == bl:
            # a = c d, b = d c = c^-1 a c
            c = ReducedWord.from_signed(al[:i])
            return p * c * q.inverse()
    return None


def are_conjugate(u: ReducedWord, v: ReducedWord) -> bool:
    return conjugator(u, v) is not None
