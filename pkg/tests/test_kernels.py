"""The compiled kernels and the pure-Python fallback must agree exactly."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reorilat import _pykernels, kernels
from reorilat.dag import NAMED, tournament

from .conftest import dags

try:
    from reorilat import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def th(d):
    return [u for u, _ in d.arcs], [v for _, v in d.arcs]


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")


@needs_ext
@settings(max_examples=120, deadline=None)
@given(dags(max_n=5), st.integers(0, 1 << 10))
def test_flips_and_acyclicity_agree(d, raw):
    t, h = th(d)
    e = raw & d.full_arc_mask
    assert _ckernels.is_acyclic(d.n, t, h, e) == _pykernels.is_acyclic(d.n, t, h, e)
    if _pykernels.is_acyclic(d.n, t, h, e):
        assert _ckernels.flippable_mask(d.n, t, h, e) == _pykernels.flippable_mask(d.n, t, h, e)


@needs_ext
@settings(max_examples=60, deadline=None)
@given(dags(max_n=5))
def test_enumeration_agrees(d):
    t, h = th(d)
    assert _ckernels.acyclic_reorientations(d.n, t, h, -1) == _pykernels.acyclic_reorientations(d.n, t, h, -1)


@needs_ext
def test_enumeration_cap():
    d = tournament(4)
    t, h = th(d)
    assert _ckernels.acyclic_reorientations(d.n, t, h, 10) is None
    assert _pykernels.acyclic_reorientations(d.n, t, h, 10) is None


def flip_graph(d):
    t, h = th(d)
    el = _pykernels.acyclic_reorientations(d.n, t, h, -1)
    idx = {e: i for i, e in enumerate(el)}
    return [sorted(idx[e ^ 1 << i] for i in range(d.m) if _pykernels.flippable_mask(d.n, t, h, e) >> i & 1) for e in el]


@needs_ext
@pytest.mark.parametrize("name", ["K3", "C4", "T1", "K4", "DIA"])
def test_hamiltonian_search_agrees(name):
    adj = flip_graph(NAMED[name])
    for cycle in (True, False):
        assert _ckernels.hamiltonian_search(adj, cycle) == _pykernels.hamiltonian_search(adj, cycle)


def is_hamiltonian(adj, walk, cycle):
    if sorted(walk) != list(range(len(adj))):
        return False
    steps = list(zip(walk, walk[1:])) + ([(walk[-1], walk[0])] if cycle else [])
    return all(b in adj[a] for a, b in steps)


@pytest.mark.parametrize("impl", [_pykernels, _ckernels] if _ckernels else [_pykernels])
def test_hamiltonian_witnesses(impl):
    k4 = flip_graph(NAMED["K4"])
    cyc = impl.hamiltonian_search(k4, True)
    assert cyc is not None and is_hamiltonian(k4, cyc, True)
    # C4's flip graph is bipartite with sides 8 and 6: no Hamiltonian path
    c4 = flip_graph(NAMED["C4"])
    assert impl.hamiltonian_search(c4, False) is None
