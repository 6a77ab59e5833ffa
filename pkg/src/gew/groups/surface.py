"""Closed orientable surface groups with Dehn's algorithm.

Generators ``x1, y1, ..., xg, yg`` are encoded as letters ``1..2g``
(``x_i -> 2i-1``, ``y_i -> 2i``, inverses negative) and the single relator is
``[x1,y1]...[xg,yg]``. Elements are Dehn-irreducible letter tuples; they are
not unique, so equality goes through the triviality test.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import _kernels
from .base import Group


def surface_relator(genus: int) -> tuple[int, ...]:
    rel: list[int] = []
    for i in range(1, genus + 1):
        x, y = 2 * i - 1, 2 * i
        rel.extend([-x, -y, x, y])
    return tuple(rel)


@dataclass(frozen=True)
class SurfaceGroup(Group):
    genus: int
    orientable: bool = True
    relator: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)

    canonical = False

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        object.__setattr__(self, "relator", surface_relator(self.genus) if self.orientable else ())

    def _require_dehn(self):
        if not self.orientable:
            raise NotImplementedError("Dehn's algorithm is only implemented for orientable surfaces")
        if self.genus < 2:
            raise NotImplementedError("Dehn's algorithm needs genus >= 2")

    @property
    def names(self) -> tuple[str, ...]:
        out = []
        for i in range(1, self.genus + 1):
            out += [f"x{i}", f"y{i}"]
        return tuple(out)

    def dehn_reduce(self, letters) -> tuple[int, ...]:
        self._require_dehn()
        return _kernels.dehn_reduce(tuple(letters), self.relator)

    def is_trivial(self, letters) -> bool:
        self._require_dehn()
        return _kernels.dehn_is_trivial(tuple(letters), self.relator)

    def identity(self):
        return ()

    def mul(self, x, y):
        return self.dehn_reduce(x + y)

    def inv(self, x):
        return tuple(-a for a in reversed(x))

    def equal(self, x, y):
        return self.is_trivial(x + self.inv(y))

    def is_identity(self, x):
        return self.is_trivial(x)

    def bucket(self, x):
        # abelianization image; equal elements share it
        vec = [0] * (2 * self.genus)
        for a in x:
            vec[abs(a) - 1] += 1 if a > 0 else -1
        return tuple(vec)

    def contains(self, x):
        return isinstance(x, tuple) and all(
            isinstance(a, int) and a != 0 and abs(a) <= 2 * self.genus for a in x
        )

    def generators(self):
        return {name: (i + 1,) for i, name in enumerate(self.names)}

    def order(self, x):
        # surface groups of genus >= 1 are torsion-free
        return 1 if self.is_identity(x) else None

    def is_abelian(self):
        return self.genus <= 1

    def letter_length(self, x) -> int:
        return len(x)

    def format(self, x):
        if not x:
            return "1"
        names = self.names
        parts = []
        i = 0
        while i < len(x):
            j = i
            while j < len(x) and x[j] == x[i]:
                j += 1
            name = names[abs(x[i]) - 1]
            e = (j - i) * (1 if x[i] > 0 else -1)
            parts.append(name if e == 1 else f"{name}^{e}")
            i = j
        return "*".join(parts)

    def describe(self):
        kind = "orientable" if self.orientable else "nonorientable"
        return f"surface({kind}, genus={self.genus})"

    def common_root(self, g1, g2, ball_elements=None, max_exp: int | None = None):
        """Bounded search for ``(u, k1, k2)`` with ``g1 == u^k1`` and ``g2 == u^k2``.

        Candidates: ``g1``, ``g2`` and their cyclic-word primitive roots first,
        then every element of ``ball_elements`` whose abelianization is
        compatible. Exponents range over ``1 <= |k| <= max_exp``.
        """
        if max_exp is None:
            max_exp = max(len(g1), len(g2), 1)
        a1, a2 = self.bucket(g1), self.bucket(g2)
        cands = [g1, g2]
        for g in (g1, g2):
            root = _letter_root(g)
            if root is not None:
                cands.append(root)
        if ball_elements is not None:
            cands.extend(ball_elements)
        seen = set()
        for u in cands:
            if u in seen or self.is_identity(u):
                continue
            seen.add(u)
            au = self.bucket(u)
            k1s = _compatible_exponents(au, a1, max_exp)
            k2s = _compatible_exponents(au, a2, max_exp)
            if not k1s or not k2s:
                continue
            k1 = next((k for k in k1s if self.equal(self.power(u, k), g1)), None)
            if k1 is None:
                continue
            k2 = next((k for k in k2s if self.equal(self.power(u, k), g2)), None)
            if k2 is not None:
                return u, k1, k2
        return None


def _compatible_exponents(au, ag, max_exp):
    ks = []
    for k in range(1, max_exp + 1):
        for s in (k, -k):
            if all(s * a == b for a, b in zip(au, ag)):
                ks.append(s)
    return ks


def _letter_root(x):
    """Primitive root of the cyclically reduced core of a free letter word, conjugated back."""
    if not x:
        return None
    r = _kernels.free_reduce(x)
    k, core = _kernels.cyclic_core(r)
    n = len(core)
    for d in range(1, n + 1):
        if n % d == 0 and core[:d] * (n // d) == core:
            p = tuple(r[:k])
            return p + core[:d] + tuple(-a for a in reversed(p))
    return None

