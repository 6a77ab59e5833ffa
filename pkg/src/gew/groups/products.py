"""Direct products, free products and rational vector groups."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .base import Group, lcm_or_none
from .finite import CyclicGroup, SymmetricGroup
from .free import FreeGroup


@dataclass(frozen=True)
class RationalVector(Group):
    """``Q^dim`` under addition, written multiplicatively; elements are Fraction tuples."""

    dim: int

    def identity(self):
        return (Fraction(0),) * self.dim

    def mul(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inv(self, x):
        return tuple(-a for a in x)

    def power(self, x, k):
        return tuple(a * k for a in x)

    def root(self, x, m: int):
        """The unique ``r`` with ``r^m == x``."""
        if m == 0:
            raise ZeroDivisionError("zeroth root")
        return tuple(a / m for a in x)

    def contains(self, x):
        return isinstance(x, tuple) and len(x) == self.dim and all(isinstance(a, Fraction) for a in x)

    def generators(self):
        return {}

    def order(self, x):
        return 1 if not any(x) else None

    def is_abelian(self):
        return True

    def enumerable(self, gens):
        return all(not any(g) for g in gens)

    def format(self, x):
        return "rat(" + ",".join(str(a) for a in x) + ")"

    def describe(self):
        return f"rational({self.dim})"


@dataclass(frozen=True)
class DirectProduct(Group):
    factors: tuple[Group, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("direct product needs at least one factor")

    @property
    def canonical(self):
        return all(f.canonical for f in self.factors)

    @property
    def q_index(self) -> int | None:
        """Index of the designated divisible factor: the unique RationalVector factor."""
        idx = [i for i, f in enumerate(self.factors) if isinstance(f, RationalVector)]
        return idx[0] if len(idx) == 1 else None

    def identity(self):
        return tuple(f.identity() for f in self.factors)

    def mul(self, x, y):
        return tuple(f.mul(a, b) for f, a, b in zip(self.factors, x, y))

    def inv(self, x):
        return tuple(f.inv(a) for f, a in zip(self.factors, x))

    def power(self, x, k):
        return tuple(f.power(a, k) for f, a in zip(self.factors, x))

    def equal(self, x, y):
        return all(f.equal(a, b) for f, a, b in zip(self.factors, x, y))

    def bucket(self, x):
        return tuple(f.bucket(a) for f, a in zip(self.factors, x))

    def contains(self, x):
        return (
            isinstance(x, tuple)
            and len(x) == len(self.factors)
            and all(f.contains(a) for f, a in zip(self.factors, x))
        )

    def embed(self, i: int, a):
        out = list(self.identity())
        out[i] = a
        return tuple(out)

    def generators(self):
        counts: dict[str, int] = {}
        for f in self.factors:
            for name in f.generators():
                counts[name] = counts.get(name, 0) + 1
        out = {}
        for i, f in enumerate(self.factors):
            for name, a in f.generators().items():
                if counts[name] == 1:
                    out[name] = self.embed(i, a)
        return out

    def components(self):
        return self.factors

    def order(self, x):
        return lcm_or_none(f.order(a) for f, a in zip(self.factors, x))

    def size(self):
        acc = 1
        for f in self.factors:
            s = f.size()
            if s is None:
                return None
            acc *= s
        return acc

    def is_abelian(self):
        return all(f.is_abelian() for f in self.factors)

    def enumerable(self, gens):
        return all(
            f.enumerable([g[i] for g in gens]) for i, f in enumerate(self.factors)
        )

    def format(self, x):
        return "(" + ",".join(f.format(a) for f, a in zip(self.factors, x)) + ")"

    def describe(self):
        return "direct(" + ", ".join(f.describe() for f in self.factors) + ")"


def _finite_canonical(g: Group) -> bool:
    if isinstance(g, (FreeGroup, CyclicGroup, SymmetricGroup)):
        return True
    if isinstance(g, DirectProduct):
        return g.size() is not None and g.canonical
    return False


@dataclass(frozen=True)
class FreeProduct(Group):
    """Free product with elements as alternating syllable tuples ``((factor, element), ...)``.

    Each syllable is nontrivial and consecutive syllables lie in different
    factors, which makes the representation a normal form.
    """

    factors: tuple[Group, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("free product needs at least one factor")
        for f in self.factors:
            if not _finite_canonical(f):
                raise ValueError(
                    f"free-product factor {f.describe()} unsupported: factors must be free, "
                    "cyclic, symmetric or finite direct products"
                )

    def identity(self):
        return ()

    def mul(self, x, y):
        out = list(x)
        for j, (i, h) in enumerate(y):
            if out and out[-1][0] == i:
                f = self.factors[i]
                p = f.mul(out[-1][1], h)
                out.pop()
                if not f.is_identity(p):
                    out.append((i, p))
                    out.extend(y[j + 1:])
                    break
            else:
                out.extend(y[j:])
                break
        return tuple(out)

    def inv(self, x):
        return tuple((i, self.factors[i].inv(h)) for i, h in reversed(x))

    def contains(self, x):
        if not isinstance(x, tuple):
            return False
        prev = None
        for syl in x:
            if not (isinstance(syl, tuple) and len(syl) == 2):
                return False
            i, h = syl
            if not (isinstance(i, int) and 0 <= i < len(self.factors)) or i == prev:
                return False
            f = self.factors[i]
            if not f.contains(h) or f.is_identity(h):
                return False
            prev = i
        return True

    def embed(self, i: int, h):
        return () if self.factors[i].is_identity(h) else ((i, h),)

    def generators(self):
        out = {}
        for i, f in enumerate(self.factors):
            for name, h in f.generators().items():
                out.setdefault(name, self.embed(i, h))
        return out

    def direct_target(self) -> DirectProduct:
        return DirectProduct(self.factors)

    def projection(self, x):
        """Image under the natural map onto the direct product of the factors."""
        comps = [f.identity() for f in self.factors]
        for i, h in x:
            comps[i] = self.factors[i].mul(comps[i], h)
        return tuple(comps)

    def in_cartesian(self, x) -> bool:
        return self.direct_target().is_identity(self.projection(x))

    def is_dihedral(self) -> bool:
        return len(self.factors) == 2 and all(f.size() == 2 for f in self.factors)

    def order(self, x):
        while len(x) >= 2 and x[0][0] == x[-1][0]:
            last = (x[-1],)
            x = self.mul(self.mul(last, x), self.inv(last))
        if not x:
            return 1
        if len(x) == 1:
            i, h = x[0]
            return self.factors[i].order(h)
        return None

    def size(self):
        nontrivial = [f for f in self.factors if f.size() != 1]
        if len(nontrivial) <= 1:
            return nontrivial[0].size() if nontrivial else 1
        return None

    def format(self, x):
        if not x:
            return "1"
        return "*".join(self.factors[i].format(h) for i, h in x)

    def describe(self):
        return "freeproduct(" + ", ".join(f.describe() for f in self.factors) + ")"
