"""Free groups and semidirect products ``F_r ⋊ Z_n``."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..freewords import IDENTITY, ReducedWord, gen
from .finite import CyclicGroup
from .base import Group


@dataclass(frozen=True)
class FreeGroup(Group):
    names: tuple[str, ...]

    @property
    def rank(self) -> int:
        return len(self.names)

    def identity(self):
        return IDENTITY

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        return x.inverse()

    def power(self, x, k):
        return x ** k

    def contains(self, x):
        return isinstance(x, ReducedWord) and all(g < self.rank for g in x.generators())

    def generators(self):
        return {name: gen(i) for i, name in enumerate(self.names)}

    def order(self, x):
        return 1 if x.is_identity() else None

    def is_abelian(self):
        return self.rank <= 1

    def format(self, x):
        return x.format(self.names)

    def describe(self):
        return f"free({','.join(self.names)})"


@dataclass(frozen=True)
class SemidirectProduct(Group):
    """``F ⋊ <a>_n`` with ``a`` acting through generator images.

    An element ``(w, e)`` stands for ``w a^e``. With ``alpha(w) = a w a^-1``,
    the product is ``(w1, e1)(w2, e2) = (w1 alpha^e1(w2), e1 + e2)``.
    ``images[i]`` is ``alpha`` applied to the i-th free generator.
    """

    free: FreeGroup
    acting: CyclicGroup
    images: tuple[ReducedWord, ...]
    _powers: tuple = field(default=(), init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.images) != self.free.rank:
            raise ValueError("action must give an image for every free generator")
        for im in self.images:
            if not self.free.contains(im):
                raise ValueError(f"action image {im} is not a word in {self.free.describe()}")
        powers = [tuple(gen(i) for i in range(self.free.rank))]
        for _ in range(self.acting.n):
            prev = powers[-1]
            powers.append(tuple(self._substitute(self.images, w) for w in prev))
        if powers[-1] != powers[0]:
            raise ValueError(
                f"action does not have order dividing {self.acting.n} on the generators"
            )
        object.__setattr__(self, "_powers", tuple(powers[:-1]))

    @staticmethod
    def _substitute(images, w: ReducedWord) -> ReducedWord:
        out = IDENTITY
        for g, e in w.syllables:
            out = out * (images[g] ** e)
        return out

    def act(self, k: int, w: ReducedWord) -> ReducedWord:
        """``alpha^k(w)``."""
        k %= self.acting.n
        if k == 0:
            return w
        return self._substitute(self._powers[k], w)

    def identity(self):
        return (IDENTITY, 0)

    def mul(self, x, y):
        w1, e1 = x
        w2, e2 = y
        return (w1 * self.act(e1, w2), (e1 + e2) % self.acting.n)

    def inv(self, x):
        w, e = x
        ne = (-e) % self.acting.n
        return (self.act(ne, w.inverse()), ne)

    def contains(self, x):
        return (
            isinstance(x, tuple)
            and len(x) == 2
            and self.free.contains(x[0])
            and self.acting.contains(x[1])
        )

    def generators(self):
        out = {name: (w, 0) for name, w in self.free.generators().items()}
        out[self.acting.name] = (IDENTITY, 1 % self.acting.n)
        return out

    def components(self):
        return (self.free, self.acting)

    def order(self, x):
        w, e = x
        k = self.acting.order(e)
        y = self.power(x, k)
        return k if y[0].is_identity() else None

    def format(self, x):
        return f"({self.free.format(x[0])},{self.acting.format(x[1])})"

    def describe(self):
        action = ", ".join(
            f"{name}->{self.free.format(im)}" for name, im in zip(self.free.names, self.images)
        )
        return f"semidirect({self.free.describe()}, {self.acting.describe()}, action{{{action}}})"
