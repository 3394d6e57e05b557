from __future__ import annotations

from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reorilat.corpus import corpus
from reorilat.dag import NAMED, is_skeletal, is_vertebrate, tournament
from reorilat.errors import NotALattice, SizeCapExceeded
from reorilat.lattice import (
    ReorientationLattice,
    canonical_join_representation,
    canonical_meet_representation,
    count_acyclic_reorientations,
    is_acyclic_reorientation,
    is_biclosed,
    join,
    k_join,
    meet,
    structural_properties,
)
from reorilat.poset import k_join_oracle

from .conftest import dags


def brute_acyclic(d):
    return [b for b in range(1 << d.m) if is_acyclic_reorientation(d, b)]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_tournaments_give_permutations(n):
    assert len(ReorientationLattice(tournament(n))) == factorial(n)


def test_c4_size_and_parity():
    lat = ReorientationLattice(NAMED["C4"])
    assert len(lat) == 14
    assert lat.parity_split() == (8, 6)


def test_dia_is_not_a_lattice():
    lat = ReorientationLattice(NAMED["DIA"])
    assert not lat.poset.is_lattice()
    with pytest.raises(NotALattice):
        join(NAMED["DIA"], [1, 2])


@settings(max_examples=100, deadline=None)
@given(dags(max_n=5))
def test_enumeration_equals_brute_force(d):
    lat = ReorientationLattice(d)
    assert lat.elements == brute_acyclic(d)
    assert count_acyclic_reorientations(d) == len(lat)


@settings(max_examples=60, deadline=None)
@given(dags(max_n=5).filter(is_vertebrate), st.data())
def test_join_meet_match_tables(d, data):
    lat = ReorientationLattice(d)
    p = lat.poset
    i = data.draw(st.integers(0, len(lat) - 1))
    j = data.draw(st.integers(0, len(lat) - 1))
    x, y = lat.elements[i], lat.elements[j]
    assert join(d, [x, y]) == lat.elements[p.join_table[i][j]]
    assert meet(d, [x, y]) == lat.elements[p.meet_table[i][j]]


@settings(max_examples=60, deadline=None)
@given(dags(max_n=5).filter(is_vertebrate))
def test_biclosed_iff_acyclic(d):
    if d.m > 10:
        return
    for b in range(1 << d.m):
        assert is_biclosed(d, b) == is_acyclic_reorientation(d, b)


def test_size_cap(monkeypatch):
    monkeypatch.setenv("REORILAT_MAX_ELEMENTS", "100")
    with pytest.raises(SizeCapExceeded):
        ReorientationLattice(tournament(5))


def test_kappa_and_canonical_representations_on_skeletal_corpus():
    for d in corpus(4, where=is_skeletal):
        lat = ReorientationLattice(d)
        p = lat.poset
        for x, y in p.covers:
            assert k_join(d, lat.elements[x], lat.elements[y]) == lat.elements[k_join_oracle(p, x, y)]
        for e in lat.elements:
            assert join(d, canonical_join_representation(d, e) + [0]) == e
            assert meet(d, canonical_meet_representation(d, e) + [d.full_arc_mask]) == e


def test_property_table_matches_oracles():
    for d in corpus(4, where=is_vertebrate):
        assert structural_properties(d) == ReorientationLattice(d).property_oracles()


def test_self_duality():
    for name in ("K4", "C4", "T1"):
        assert ReorientationLattice(NAMED[name]).is_self_dual()
