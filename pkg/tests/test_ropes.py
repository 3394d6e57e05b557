from __future__ import annotations

import json

import pytest
from hypothesis import given, settings

from reorilat.corpus import corpus
from reorilat.dag import NAMED, cliques, is_skeletal
from reorilat.errors import CrossingRopes, GraphFormatError, NotSkeletal
from reorilat.lattice import ReorientationLattice, k_join
from reorilat.ropes import (
    Rope,
    arrow,
    bidiagrams,
    crossing,
    diagram_of,
    diagram_to_dot,
    irreducible_of_rope,
    make_diagram,
    meet_diagram_of,
    meet_irreducible_of_rope,
    meet_reorientation_of,
    parse_diagram,
    parse_rope,
    reorientation_of,
    rope_count_formula,
    rope_from_dict,
    rope_of_join_irreducible,
    rope_of_meet_irreducible,
    rope_system,
)

from .conftest import dags

SKELETAL_4 = list(corpus(4, where=is_skeletal))


@pytest.mark.parametrize(
    "name, ropes, diagrams, bidiags",
    [("K3", 4, 6, 17), ("T1", 5, 12, 51), ("K4", 11, 24, 151)],
)
def test_frozen_counts(name, ropes, diagrams, bidiags):
    d = NAMED[name]
    rs = rope_system(d)
    assert len(rs) == ropes
    assert len(rs.noncrossing_diagrams()) == diagrams
    assert len(bidiagrams(d)) == bidiags


def test_requires_skeletal():
    with pytest.raises(NotSkeletal):
        rope_system(NAMED["C4"])


@settings(max_examples=80, deadline=None)
@given(dags(max_n=5).filter(is_skeletal))
def test_rope_counts_agree(d):
    rs = rope_system(d)
    assert len(rs) == rope_count_formula(d) == len(cliques(d))
    assert len(ReorientationLattice(d).join_irreducible_indices()) == len(rs)


@pytest.mark.parametrize("d", SKELETAL_4, ids=repr)
def test_irreducible_bijections(d):
    lat = ReorientationLattice(d)
    ji = set(lat.join_irreducible_indices())
    for r in rope_system(d):
        j = irreducible_of_rope(d, r)
        assert lat.index[j] in ji
        assert rope_of_join_irreducible(d, j) == r
        assert rope_of_meet_irreducible(d, meet_irreducible_of_rope(d, r)) == r
        assert not crossing(r, r)


@pytest.mark.parametrize("d", SKELETAL_4, ids=repr)
def test_diagram_bijection(d):
    lat = ReorientationLattice(d)
    rs = rope_system(d)
    assert len(rs.noncrossing_diagrams()) == len(lat)
    for e in lat.elements:
        assert reorientation_of(d, diagram_of(d, e)) == e
        assert meet_reorientation_of(d, meet_diagram_of(d, e)) == e
    for m in rs.noncrossing_diagrams():
        assert rs.mask(diagram_of(d, reorientation_of(d, rs.ropes_of(m)))) == m


@pytest.mark.parametrize("d", SKELETAL_4, ids=repr)
def test_arrow_matches_order_and_bidiagrams(d):
    lat = ReorientationLattice(d)
    rs = rope_system(d)
    for a in rs:
        for b in rs:
            expected = irreducible_of_rope(d, a) & ~meet_irreducible_of_rope(d, b) == 0
            assert arrow(d, a, b) == expected
    assert len(bidiagrams(d)) == lat.poset.interval_count()


@pytest.mark.parametrize("d", SKELETAL_4, ids=repr)
def test_kreweras_complement(d):
    lat = ReorientationLattice(d)
    for i in lat.meet_irreducible_indices():
        m = lat.elements[i]
        upper = m | (lat.flippable[i] & ~m)
        assert rope_of_join_irreducible(d, k_join(d, m, upper)) == rope_of_meet_irreducible(d, m)


def test_rope_text_and_json_round_trip():
    for r in rope_system(NAMED["K4"]):
        assert parse_rope(r.to_text()) == r
        assert rope_from_dict(json.loads(json.dumps(r.to_dict()))) == r


def test_diagram_formats():
    d = NAMED["K4"]
    e = ReorientationLattice(d).elements[-1]
    dg = diagram_of(d, e)
    assert parse_diagram(dg.to_text()) == list(dg)
    assert len(json.loads(dg.to_json())) == len(dg)
    dot = diagram_to_dot(d, dg)
    assert dot.startswith("digraph") or dot.startswith("graph")


def test_crossing_ropes_rejected():
    d = NAMED["K4"]
    rs = list(rope_system(d))
    pair = next((a, b) for a in rs for b in rs if crossing(a, b))
    with pytest.raises(CrossingRopes):
        make_diagram(d, pair)


def test_bad_rope_text():
    with pytest.raises(GraphFormatError):
        parse_rope("1 2 nonsense")
    with pytest.raises(GraphFormatError):
        parse_rope("1 2 | 3 | 4 | 5")
    assert parse_rope("1 3 | 2 |") == Rope(0, 2, 0b10, 0)
