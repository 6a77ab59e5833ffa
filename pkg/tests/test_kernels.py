import pytest
from hypothesis import given
from hypothesis import strategies as st

import gew
from gew import _kernels
from gew._kernels import compiled_backend, python_backend
from gew.groups.surface import surface_relator

from tests.oracles import naive_reduce

BACKENDS = [python_backend] + ([compiled_backend] if compiled_backend is not None else [])
IDS = [b.BACKEND for b in BACKENDS]

letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=40).map(tuple)
surface_letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4]), max_size=30).map(tuple)
R2 = surface_relator(2)


def to_pairs(w):
    return tuple((abs(a) - 1, 1 if a > 0 else -1) for a in w)


def from_syl(syl):
    out = []
    for g, e in syl:
        out += [(g + 1) if e > 0 else -(g + 1)] * abs(e)
    return tuple(out)


def test_backend_selected():
    assert gew.BACKEND in ("cython", "python")
    assert _kernels.BACKEND == gew.BACKEND


@pytest.mark.parametrize("backend", BACKENDS, ids=IDS)
@given(w=letters)
def test_reduce_matches_stack_oracle(backend, w):
    assert from_syl(backend.reduce_syllables(to_pairs(w))) == naive_reduce(w)
    assert backend.free_reduce(w) == naive_reduce(w)


@pytest.mark.parametrize("backend", BACKENDS, ids=IDS)
@given(u=letters, v=letters)
def test_mul_matches_concatenation(backend, u, v):
    su = backend.reduce_syllables(to_pairs(u))
    sv = backend.reduce_syllables(to_pairs(v))
    assert from_syl(backend.mul_syllables(su, sv)) == naive_reduce(u + v)


@pytest.mark.parametrize("backend", BACKENDS, ids=IDS)
@given(w=letters)
def test_cyclic_core_conjugates_back(backend, w):
    r = naive_reduce(w)
    k, core = backend.cyclic_core(r)
    core = tuple(core)
    p = r[:k]
    assert naive_reduce(p + core + tuple(-a for a in reversed(p))) == r
    assert not core or core[0] != -core[-1]


@pytest.mark.skipif(compiled_backend is None, reason="extension not built")
@given(w=surface_letters)
def test_dehn_backends_agree(w):
    assert tuple(compiled_backend.dehn_reduce(w, R2)) == tuple(python_backend.dehn_reduce(w, R2))
    assert compiled_backend.dehn_is_trivial(w, R2) == python_backend.dehn_is_trivial(w, R2)


@pytest.mark.parametrize("backend", BACKENDS, ids=IDS)
@given(w=surface_letters)
def test_dehn_never_lengthens(backend, w):
    r = naive_reduce(w)
    assert len(backend.dehn_reduce(w, R2)) <= len(r)


@pytest.mark.parametrize("backend", BACKENDS, ids=IDS)
def test_dehn_relator_rotations_trivial(backend):
    for i in range(len(R2)):
        rot = R2[i:] + R2[:i]
        assert backend.dehn_is_trivial(rot, R2)
        assert backend.dehn_is_trivial(tuple(-a for a in reversed(rot)), R2)
    assert not backend.dehn_is_trivial((1,), R2)
