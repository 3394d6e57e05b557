from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reorilat.congruence import enumerate_ideals, full_ideal, sylvester_ideal
from reorilat.corpus import corpus
from reorilat.dag import NAMED, is_chordful, is_skeletal
from reorilat.errors import DegenerateConfiguration, NonGenericDirection, OnWall
from reorilat.geometry import (
    B4_CONFIGURATION,
    NONLATTICE_CONFIGURATION,
    HRep,
    VPolytope,
    VectorConfiguration,
    associahedron_minkowski,
    chamber_of,
    check_removahedron,
    check_simplicial_slices,
    graphical_zonotope,
    in_convex_hull,
    incidence_configuration,
    interior_point,
    is_fan_simplicial,
    minkowski_vertex,
    parse_q,
    parse_vertices,
    qvector,
    quotientope,
    random_weights,
    ray_in_chamber,
    ray_vector,
    refinement_matches,
    regions_lattice,
    same_polytope,
    shard_contains,
    shard_polytope,
    shard_polytope_vertices,
    shard_wall_points,
    simplex_face,
    sylvester_quotientope,
    unit,
    verify_quotientope,
    vsub,
    zonotope_facets,
    zonotope_vertex,
)
from reorilat.lattice import ReorientationLattice
from reorilat.ropes import Rope, all_ropes

from .conftest import dags

K3 = NAMED["K3"]
SKELETAL_4 = list(corpus(4, where=is_skeletal))


def q(*xs):
    return qvector(xs)


def test_zonotope_basics():
    assert zonotope_vertex(K3, 0) == q(0, 1, 2)
    assert len(graphical_zonotope(NAMED["C4"])) == 14
    assert len(graphical_zonotope(NAMED["K4"])) == 24


@settings(max_examples=40, deadline=None)
@given(dags(max_n=5))
def test_zonotope_vertices_satisfy_facets(d):
    h = zonotope_facets(d)
    for e in ReorientationLattice(d).elements:
        x = zonotope_vertex(d, e)
        assert h.contains(x)
        assert chamber_of(d, interior_point(d, e)) == e


def test_zonotope_equals_facet_description():
    for name in ("K3", "C4", "T1"):
        assert same_polytope(graphical_zonotope(NAMED[name]), zonotope_facets(NAMED[name]))


def test_chamber_of_rejects_walls():
    with pytest.raises(OnWall):
        chamber_of(K3, q(1, 1, 2))
    assert chamber_of(K3, q(2, 1, 3)) == 0b001


def test_rays():
    assert ray_vector(K3, 0b001) == q(-2, 1, 1)
    assert ray_vector(K3, 0b011) == q(-1, -1, 2)
    assert ray_in_chamber(K3, 0, 0b001)
    assert not ray_in_chamber(K3, 0, 0b010)


def test_shard_contains():
    r = Rope(0, 2, 0b010, 0)
    assert shard_contains(r, q(1, 0, 1))
    assert not shard_contains(r, q(1, 2, 1))
    assert not shard_contains(r, q(0, 0, 1))


@pytest.mark.parametrize(
    "rope, expected",
    [
        (Rope(0, 1, 0, 0), {(0, 0, 0), (1, -1, 0)}),
        (Rope(0, 2, 0b010, 0), {(0, 0, 0), (0, 1, -1), (1, 0, -1)}),
        (Rope(0, 2, 0, 0b010), {(0, 0, 0), (1, -1, 0), (1, 0, -1)}),
    ],
)
def test_shard_polytope_anchors(rope, expected):
    sp = shard_polytope(K3, rope)
    assert set(sp.vrep.vertices) == {qvector(p) for p in expected}


@pytest.mark.parametrize("d", SKELETAL_4, ids=repr)
def test_shard_polytopes_v_equals_h(d):
    for r in all_ropes(d):
        sp = shard_polytope(d, r)
        assert same_polytope(sp.vrep, sp.hrep)
        if r.up == 0:
            face = {vsub(p, unit(d.n, r.v)) for p in simplex_face(d.n, r.support).vertices}
            assert set(shard_polytope_vertices(d, r).vertices) == face


def test_minkowski_vertex():
    segs = [VPolytope(3, (q(0, 0, 0), q(1, -1, 0))), VPolytope(3, (q(0, 0, 0), q(0, 1, -1)))]
    assert minkowski_vertex(segs, q(3, 2, 1)) == q(1, 0, -1)
    assert minkowski_vertex(segs, q(3, 2, 1), [2, 3]) == q(2, 1, -3)
    with pytest.raises(NonGenericDirection):
        minkowski_vertex(segs, q(1, 1, 0))


def test_segments_sum_to_zonotope_vertex():
    d = NAMED["T1"]
    segs = [VPolytope(d.n, tuple(sorted((unit(d.n, u), unit(d.n, v))))) for u, v in d.arcs]
    for e in ReorientationLattice(d).elements:
        assert minkowski_vertex(segs, interior_point(d, e)) == zonotope_vertex(d, e)


def test_sylvester_pentagon():
    qt = sylvester_quotientope(K3)
    assert len(qt.graph.vertices) == 5
    assert verify_quotientope(qt, check_faces=True).ok


@pytest.mark.parametrize("d", SKELETAL_4, ids=repr)
def test_quotientopes(d):
    for ideal in enumerate_ideals(d):
        for seed in (1, 2):
            qt = quotientope(d, ideal, random_weights(len(ideal), seed))
            assert verify_quotientope(qt).ok


def test_quotientope_faces_k4():
    d = NAMED["K4"]
    assert verify_quotientope(quotientope(d, sylvester_ideal(d)), check_faces=True).ok


def test_weights_do_not_change_the_graph():
    d = NAMED["T1"]
    ideal = full_ideal(d)
    a = quotientope(d, ideal, random_weights(len(ideal), 1))
    b = quotientope(d, ideal, random_weights(len(ideal), 7))
    assert a.graph.edges == b.graph.edges
    assert random_weights(4, 3) == random_weights(4, 3)
    assert all(w > 0 for w in random_weights(20, 5))


@pytest.mark.parametrize("name, count", [("K3", 5), ("T1", 10)])
def test_removahedron(name, count):
    res = check_removahedron(NAMED[name])
    assert res.ok and res.vertex_count == count


def test_forest_associahedron_is_zonotope():
    d = NAMED["P3"]
    assert set(associahedron_minkowski(d).vertices) == set(graphical_zonotope(d).vertices)


def test_fan_simpliciality():
    assert is_fan_simplicial(K3)
    assert not is_fan_simplicial(NAMED["C4"])
    for d in corpus(5):
        assert is_fan_simplicial(d) == is_chordful(d)


def test_region_configurations():
    assert len(NONLATTICE_CONFIGURATION.regions) == 50
    assert len(B4_CONFIGURATION.regions) == 48
    for cfg in (NONLATTICE_CONFIGURATION, B4_CONFIGURATION):
        assert check_simplicial_slices(cfg)
        assert not regions_lattice(cfg)


def test_incidence_configuration_regions():
    for d in corpus(4):
        if d.m:
            assert incidence_configuration(d).regions == sorted(ReorientationLattice(d).elements)


def test_degenerate_configurations():
    with pytest.raises(DegenerateConfiguration):
        VectorConfiguration.of([])
    with pytest.raises(DegenerateConfiguration):
        VectorConfiguration.of([(1, 0), (0, 0)])
    with pytest.raises(DegenerateConfiguration):
        VectorConfiguration.of([(1, 0), (-1, 0)])
    with pytest.raises(DegenerateConfiguration):
        VectorConfiguration.of([(1, 0), (1, 0, 0)])


def test_walls_and_refinement():
    for d in (K3, NAMED["T1"]):
        for r in all_ropes(d):
            assert shard_wall_points(d, r) == (True, True)
        for ideal in enumerate_ideals(d):
            assert refinement_matches(d, ideal)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=6))
def test_prune_keeps_only_hull_vertices(points):
    poly = VPolytope.from_points(2, points)
    for p in points:
        assert in_convex_hull(qvector(p), poly.vertices)
    for i, v in enumerate(poly.vertices):
        rest = poly.vertices[:i] + poly.vertices[i + 1 :]
        assert not rest or not in_convex_hull(v, rest)


def test_exports_round_trip():
    poly = graphical_zonotope(K3)
    assert tuple(parse_vertices(poly.to_text())) == poly.vertices
    assert parse_q("-3/4") == F(-3, 4)
    h = HRep(2, ((q(1, 1), F(1)),), ((q(1, 0), F(0)), (q(0, 1), F(0))))
    assert h.vertices() == [q(0, 1), q(1, 0)]
    assert "= 1" in h.to_text() and '"rhs"' in h.to_json()
