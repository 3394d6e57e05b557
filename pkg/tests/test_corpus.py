from __future__ import annotations

from itertools import permutations

import pytest

from reorilat.corpus import canonical_code, corpus, dags_up_to_iso
from reorilat.dag import is_skeletal


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 6), (4, 31), (5, 302)])
def test_counts_match_known_sequence(n, count):
    assert len(dags_up_to_iso(n)) == count


def test_representatives_pairwise_non_isomorphic():
    for n in range(1, 5):
        codes = [canonical_code(d) for d in dags_up_to_iso(n)]
        assert len(set(codes)) == len(codes)


def test_every_relabelling_is_covered():
    # each DAG on 4 vertices is isomorphic to some representative
    reps = {canonical_code(d) for d in dags_up_to_iso(4)}
    for d in dags_up_to_iso(4):
        for perm in permutations(range(4)):
            assert canonical_code(d.relabel(list(perm))) in reps


def test_filtered_corpus():
    skeletal = corpus(4, where=is_skeletal)
    assert all(is_skeletal(d) for d in skeletal)
    assert len(corpus(3)) == 9
