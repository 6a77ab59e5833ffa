"""Concrete groups behind a uniform element-arithmetic contract."""

from .base import (
    GeneratingSet,
    Group,
    ball,
    ball_with_lengths,
    commutator,
    conjugate,
    equal,
    geodesic,
    identity,
    inv,
    mul,
    power,
)
from .finite import CyclicGroup, SymmetricGroup
from .free import FreeGroup, SemidirectProduct
from .products import DirectProduct, FreeProduct, RationalVector
from .surface import SurfaceGroup
from ..errors import GroupMismatchError, UnsupportedEnumerationError


def free_product_projection(group: FreeProduct, x):
    """Image of ``x`` in the direct product of the factors."""
    group.check(x)
    return group.projection(x)


def dehn_reduce(group: SurfaceGroup, letters):
    """Dehn-irreducible representative of a raw letter word."""
    return group.dehn_reduce(letters)


def surface_commute_cyclic(group: SurfaceGroup, g1, g2, ball_elements=None, max_exp=None):
    """Whether commuting nontrivial ``g1, g2`` share a root found by bounded search.

    Returns the ``(u, k1, k2)`` certificate or ``None``.
    """
    from ..errors import PreconditionError

    if group.is_identity(g1) or group.is_identity(g2):
        raise PreconditionError("elements must be nontrivial")
    if not group.is_identity(commutator(group, g1, g2)):
        raise PreconditionError("elements do not commute")
    return group.common_root(g1, g2, ball_elements, max_exp)


__all__ = [
    "Group",
    "GeneratingSet",
    "CyclicGroup",
    "SymmetricGroup",
    "FreeGroup",
    "SemidirectProduct",
    "DirectProduct",
    "FreeProduct",
    "RationalVector",
    "SurfaceGroup",
    "GroupMismatchError",
    "UnsupportedEnumerationError",
    "ball",
    "ball_with_lengths",
    "geodesic",
    "mul",
    "inv",
    "identity",
    "equal",
    "power",
    "commutator",
    "conjugate",
    "free_product_projection",
    "dehn_reduce",
    "surface_commute_cyclic",
]
