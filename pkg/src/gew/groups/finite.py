"""Finite groups: cyclic groups and symmetric groups."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .base import Group


@dataclass(frozen=True)
class CyclicGroup(Group):
    """``<name>_n`` with elements stored as residues mod ``n``."""

    name: str
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cyclic group order must be positive")

    def identity(self):
        return 0

    def mul(self, x, y):
        return (x + y) % self.n

    def inv(self, x):
        return (-x) % self.n

    def power(self, x, k):
        return (x * k) % self.n

    def contains(self, x):
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < self.n

    def generators(self):
        return {self.name: 1 % self.n}

    def order(self, x):
        return self.n // math.gcd(self.n, x)

    def size(self):
        return self.n

    def is_abelian(self):
        return True

    def format(self, x):
        if x == 0:
            return "1"
        return self.name if x == 1 else f"{self.name}^{x}"

    def describe(self):
        return f"cyclic({self.name},{self.n})"


@dataclass(frozen=True)
class SymmetricGroup(Group):
    """``S_n`` acting on ``0..n-1``; elements are image tuples.

    Products compose left to right: ``mul(p, q)`` applies ``p`` first.
    Generators ``s1 .. s(n-1)`` are the adjacent transpositions.
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("symmetric group degree must be positive")

    def identity(self):
        return tuple(range(self.n))

    def mul(self, x, y):
        return tuple(y[i] for i in x)

    def inv(self, x):
        out = [0] * self.n
        for i, j in enumerate(x):
            out[j] = i
        return tuple(out)

    def contains(self, x):
        return isinstance(x, tuple) and len(x) == self.n and sorted(x) == list(range(self.n))

    def transposition(self, i, j):
        p = list(range(self.n))
        p[i], p[j] = p[j], p[i]
        return tuple(p)

    def generators(self):
        return {f"s{i + 1}": self.transposition(i, i + 1) for i in range(self.n - 1)}

    def transpositions(self):
        return [self.transposition(i, j) for i in range(self.n) for j in range(i + 1, self.n)]

    def order(self, x):
        seen = [False] * self.n
        acc = 1
        for i in range(self.n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = x[j]
                length += 1
            acc = math.lcm(acc, length)
        return acc

    def size(self):
        return math.factorial(self.n)

    def is_abelian(self):
        return self.n <= 2

    def format(self, x):
        p = list(x)
        swaps = []
        changed = True
        while changed:
            changed = False
            for i in range(self.n - 1):
                if p[i] > p[i + 1]:
                    p[i], p[i + 1] = p[i + 1], p[i]
                    swaps.append(i)
                    changed = True
        if not swaps:
            return "1"
        # each swap replaces x by s_i*x, so x is the product of the swaps in order
        return "*".join(f"s{i + 1}" for i in swaps)

    def describe(self):
        return f"symmetric({self.n})"
