from __future__ import annotations

import pytest

from reorilat.corpus import corpus
from reorilat.dag import NAMED, Dag, from_one_based, is_vertebrate, tournament
from reorilat.errors import InvalidGraph
from reorilat.restriction import (
    RestrictionMap,
    balance_levels,
    classify_lattice_map,
    fiber,
    fiber_max,
    fiber_min,
    first_failure_witness,
    lift,
    nonnesting_quotient_subgraphs,
    restrict,
)


def test_restrict_and_lift_are_inverse_on_subgraph_arcs():
    d = NAMED["K3"]
    m = RestrictionMap(d, NAMED["P3"])
    for e_sub in m.sub_lattice.elements:
        assert restrict(m, lift(m, e_sub)) == e_sub


def test_rejects_foreign_arcs():
    with pytest.raises(InvalidGraph):
        RestrictionMap(NAMED["P3"], NAMED["K3"])


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 5), (4, 14), (5, 42), (6, 132)])
def test_nonnesting_counts(n, count):
    assert len(nonnesting_quotient_subgraphs(n)) == count


def test_nonnesting_subgraphs_are_quotients():
    for n in (3, 4):
        for sub in nonnesting_quotient_subgraphs(n):
            cls = classify_lattice_map(RestrictionMap(tournament(n), sub))
            assert cls.pathful and cls.is_lattice_quotient_map


def test_fiber_extremes_match_brute_force():
    for d in corpus(4, where=is_vertebrate):
        for mask in range(0, 1 << d.m, 3):
            sub = Dag(d.n, tuple(d.arcs_of(mask)))
            m = RestrictionMap(d, sub)
            for es in m.sub_lattice.elements:
                f = fiber(m, es)
                mins = [x for x in f if all(x & y == x for y in f)]
                maxs = [x for x in f if all(x | y == x for y in f)]
                assert fiber_min(m, es) == (mins[0] if len(mins) == 1 else None)
                assert fiber_max(m, es) == (maxs[0] if len(maxs) == 1 else None)


def test_path_conditions_match_definitions_on_vertebrate_pairs():
    for d in corpus(4, where=is_vertebrate):
        for mask in range(1 << d.m):
            sub = Dag(d.n, tuple(d.arcs_of(mask)))
            if not is_vertebrate(sub):
                continue
            cls = classify_lattice_map(RestrictionMap(d, sub))
            assert cls.consistent


def test_weakly_pathful_is_not_necessary():
    d = from_one_based(4, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)])
    star = from_one_based(4, [(1, 2), (1, 3), (1, 4)])
    cls = classify_lattice_map(RestrictionMap(d, star))
    assert cls.fibers_are_intervals and not cls.weakly_pathful


def test_strong_balance_is_exact():
    for d in corpus(4):
        for mask in range(1 << d.m):
            m = RestrictionMap(d, Dag(d.n, tuple(d.arcs_of(mask))))
            from reorilat.restriction import interval_isomorphism_oracle

            assert balance_levels(m)["strongly_balanced"] == interval_isomorphism_oracle(m)


def test_witness_text():
    m = RestrictionMap(NAMED["K3"], from_one_based(3, [(1, 3)]))
    assert "leaves the subgraph" in first_failure_witness(m)
    assert first_failure_witness(RestrictionMap(NAMED["K3"], NAMED["K3"])) is None
