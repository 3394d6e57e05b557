from __future__ import annotations

import itertools

import pytest

from reorilat.congruence import (
    PartialReorientation,
    Rope,
    coherent_ideal,
    coherent_interval_check,
    conjecture_harness,
    congruence_from_ideal,
    context,
    doubling_sequence,
    enumerate_ideals,
    extend_congruence,
    extension_by_definition,
    hamiltonicity,
    ideal_masks,
    ideal_of_partition,
    interval_partial_reorientation,
    min_max_by_decoration,
    partial_reorientation,
    principal_ideal,
    restrict_congruence,
    restriction_by_definition,
    sylvester_ideal,
)
from reorilat.corpus import corpus
from reorilat.dag import NAMED, Dag, is_skeletal
from reorilat.errors import NotALattice
from reorilat.lattice import ReorientationLattice
from reorilat.poset import all_congruences, canonical_partition, generate_congruence
from reorilat.restriction import RestrictionMap, is_pathful, is_strongly_pathful
from reorilat.ropes import irreducible_of_rope, is_subrope, rope_system

SKELETAL_3 = list(corpus(3, where=is_skeletal))
SKELETAL_4 = list(corpus(4, where=is_skeletal))


@pytest.mark.parametrize("name, count", [("K3", 7), ("T1", 14), ("K4", 60)])
def test_congruence_counts(name, count):
    assert len(ideal_masks(NAMED[name])) == count


@pytest.mark.parametrize("name, count", [("K3", 5), ("T1", 10), ("K4", 14)])
def test_sylvester_sizes(name, count):
    c = congruence_from_ideal(NAMED[name], sylvester_ideal(NAMED[name]))
    c.verify()
    assert len(c) == count


@pytest.mark.parametrize("name, ropes, classes", [("K3", 2, 4), ("T1", 3, 8)])
def test_trivial_decoration(name, ropes, classes):
    d = NAMED[name]
    ideal = coherent_ideal(d, 0, 0)
    assert len(ideal) == ropes
    assert len(congruence_from_ideal(d, ideal)) == classes


def test_principal_example():
    d = NAMED["T1"]
    assert len(congruence_from_ideal(d, principal_ideal(d, Rope(0, 2, 0b10, 0)))) == 5


@pytest.mark.parametrize("d", SKELETAL_4, ids=repr)
def test_ideals_are_all_congruences(d):
    ctx = context(d)
    seen = set()
    for ideal in enumerate_ideals(d):
        c = ctx.congruence(ideal)
        c.verify()
        assert c.respects_operations()
        seen.add(canonical_partition(c.class_of))
        assert ideal_of_partition(d, c.class_of).members == ideal.members
    assert seen == all_congruences(ctx.lattice.poset)


@pytest.mark.parametrize("d", SKELETAL_4, ids=repr)
def test_forcing_is_subrope_order(d):
    lat = context(d).lattice
    rs = rope_system(d)

    def cover_of(r):
        j = irreducible_of_rope(d, r)
        i = lat.index[j]
        return lat.index[j & ~lat.flippable[i]], i

    for r1 in rs:
        lab = generate_congruence(lat.poset, [cover_of(r1)])
        for r2 in rs:
            lo, hi = cover_of(r2)
            assert (lab[lo] == lab[hi]) == is_subrope(r1, r2)


def _decorations(d):
    full = d.full_vertex_mask
    return [(a, b) for a in (0, full) for b in (0, full)] + [(x, full & ~x) for x in range(1 << d.n)]


@pytest.mark.parametrize("d", SKELETAL_3 + [NAMED["K4"]], ids=repr)
def test_decoration_extremes(d):
    ctx = context(d)
    for down, up in _decorations(d):
        c = ctx.congruence(coherent_ideal(d, down, up))
        mins, maxs = set(c.minima), set(c.maxima)
        for x, e in enumerate(ctx.lattice.elements):
            mm = min_max_by_decoration(d, e, down, up)
            assert mm["is_min"] == (x in mins)
            assert mm["is_max"] == (x in maxs)


@pytest.mark.parametrize("d", SKELETAL_3 + [NAMED["T1"]], ids=repr)
def test_coherent_interval_check(d):
    ctx = context(d)
    for down, up in _decorations(d):
        c = ctx.congruence(coherent_ideal(d, down, up))
        q = c.quotient
        intervals = set()
        for a in range(q.size):
            for b in range(q.size):
                if q.leq(a, b):
                    p = interval_partial_reorientation(c, a, b)
                    intervals.add((p.forward, p.backward))
        for code in itertools.product(range(3), repeat=d.m):
            fwd = sum(1 << i for i, x in enumerate(code) if x == 1)
            bwd = sum(1 << i for i, x in enumerate(code) if x == 2)
            p = PartialReorientation(d, fwd, bwd)
            if p.is_acyclic():
                assert coherent_interval_check(d, p, down, up) == ((fwd, bwd) in intervals)


@pytest.mark.parametrize("d", SKELETAL_4, ids=repr)
def test_partial_reorientations_give_order_and_degree(d):
    ctx = context(d)
    for mask in ideal_masks(d):
        c = ctx.congruence(mask)
        q = c.quotient
        ps = [partial_reorientation(c, [k]) for k in range(len(c))]
        for a in range(q.size):
            for b in range(q.size):
                assert q.leq(a, b) == ps[a].leq(ps[b])
        adj = c.quotient_cover_graph()
        for k in range(len(c)):
            assert len(adj[k]) == len(ps[k].reduction())


@pytest.mark.parametrize("d", SKELETAL_4, ids=repr)
def test_extension_and_restriction(d):
    for k in range(d.m + 1):
        for sub in itertools.combinations(d.arcs, k):
            ds = Dag(d.n, tuple(sub))
            if not is_skeletal(ds):
                continue
            m = RestrictionMap(d, ds)
            if is_pathful(m):
                for ideal in enumerate_ideals(ds):
                    cs = congruence_from_ideal(ds, ideal)
                    assert canonical_partition(extend_congruence(m, cs).class_of) == extension_by_definition(m, cs)
            if is_strongly_pathful(m):
                for ideal in enumerate_ideals(d):
                    c = congruence_from_ideal(d, ideal)
                    assert canonical_partition(restrict_congruence(m, c).class_of) == restriction_by_definition(m, c)


@pytest.mark.parametrize(
    "name, sizes",
    [("K3", [2]), ("C4", [6]), ("T1", [4]), ("K4", [4, 6, 6])],
)
def test_doubling_sizes(name, sizes):
    steps = doubling_sequence(NAMED[name])
    assert [s.doubled.bit_count() for s in steps] == sizes
    assert all(s.is_convex and s.is_isomorphic for s in steps)


def test_c4_doubles_a_non_interval():
    (step,) = doubling_sequence(NAMED["C4"])
    assert step.arc == (0, 3)
    assert not step.is_interval


def test_doubling_needs_vertebrate():
    with pytest.raises(NotALattice):
        doubling_sequence(NAMED["DIA"])


def test_hamiltonicity():
    assert hamiltonicity([[1, 3], [0, 2], [1, 3], [0, 2]]).kind == "cycle"
    assert hamiltonicity([[1], [0, 2], [1]]).kind == "path"
    star = hamiltonicity([[1, 2, 3], [0], [0], [0]])
    assert star.kind == "none" and star.witness is None
    assert hamiltonicity([[1], [0]]).trivial


def test_sylvester_quotients_are_hamiltonian():
    for d in SKELETAL_4:
        c = congruence_from_ideal(d, sylvester_ideal(d))
        h = hamiltonicity(c.quotient_cover_graph())
        assert h.kind == "cycle" or h.trivial


def test_c4_lattice_has_no_hamiltonian_cycle():
    lat = ReorientationLattice(NAMED["C4"])
    adj = [[] for _ in lat.elements]
    for a, b in lat.poset.covers:
        adj[a].append(b)
        adj[b].append(a)
    assert hamiltonicity(adj).kind == "none"


def test_harness_small():
    report = conjecture_harness(SKELETAL_4)
    assert len(report.graphs) == 34
    assert report.ok
    assert [repr(g) for g in report.shared_pattern_counterexamples] == ["Dag(n=4, arcs=[12,13,23,24,34])"]
