from __future__ import annotations

import json

import networkx as nx
import pytest
from hypothesis import given, settings

from reorilat.dag import (
    NAMED,
    Dag,
    biconnected_subsets,
    cliques,
    from_one_based,
    is_chordal,
    is_chordful,
    is_filled,
    is_skeletal,
    is_vertebrate,
    is_vertebrate_naive,
    load_graph,
    parse_json,
    parse_text,
    to_json,
    to_text,
    transitive_closure,
    transitive_reduction,
    transitive_support,
)
from reorilat.errors import GraphFormatError, InvalidGraph

from .conftest import dags


def nx_graph(d: Dag) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(d.n))
    g.add_edges_from(d.arcs)
    return g


def test_rejects_cycles_and_loops():
    with pytest.raises(InvalidGraph):
        Dag(3, ((0, 1), (1, 2), (2, 0)))
    with pytest.raises(InvalidGraph):
        Dag(2, ((0, 0),))
    with pytest.raises(InvalidGraph):
        Dag(2, ((0, 1), (1, 0)))


@pytest.mark.parametrize(
    "name, vertebrate, filled, chordful",
    [
        ("K3", True, True, True),
        ("C4", True, False, False),
        ("DIA", False, True, False),
        ("T1", True, True, True),
        ("P3", True, True, True),
    ],
)
def test_named_predicates(name, vertebrate, filled, chordful):
    d = NAMED[name]
    assert is_vertebrate(d) is vertebrate
    assert is_filled(d) is filled
    assert is_skeletal(d) is (vertebrate and filled)
    assert is_chordful(d) is chordful


def test_p3_biconnected_subsets():
    # {2} is excluded: removing it disconnects 1 from 3
    assert sorted(biconnected_subsets(NAMED["P3"])) == [0b001, 0b011, 0b100, 0b110]


def test_transitive_support_k4():
    d = NAMED["K4"]
    assert transitive_support(d, (0, 3)) == 0b1111
    assert transitive_support(d, (1, 2)) == 0b0110


@settings(max_examples=150, deadline=None)
@given(dags())
def test_closure_and_reduction_match_networkx(d):
    g = nx_graph(d)
    assert set(transitive_closure(d).arcs) == set(nx.transitive_closure_dag(g).edges)
    assert set(transitive_reduction(d).arcs) == set(nx.transitive_reduction(g).edges)


@settings(max_examples=150, deadline=None)
@given(dags())
def test_vertebrate_fast_equals_naive(d):
    assert is_vertebrate(d) == is_vertebrate_naive(d)


@settings(max_examples=150, deadline=None)
@given(dags())
def test_chordal_matches_networkx(d):
    assert is_chordal(d) == nx.is_chordal(nx_graph(d).to_undirected())


@settings(max_examples=100, deadline=None)
@given(dags())
def test_cliques_are_tournaments(d):
    und = nx_graph(d).to_undirected()
    expected = set()
    for c in nx.enumerate_all_cliques(und):
        if len(c) >= 2:
            expected.add(sum(1 << v for v in c))
    assert set(cliques(d)) == expected


@settings(max_examples=100, deadline=None)
@given(dags())
def test_text_and_json_round_trip(d):
    assert parse_text(to_text(d)) == d
    assert parse_json(to_json(d)) == d


def test_parse_errors_carry_line_numbers():
    with pytest.raises(GraphFormatError, match="line 3"):
        parse_text("3\n1 2\n1 x\n")
    with pytest.raises(GraphFormatError, match="out of range"):
        parse_text("2\n1 3\n")
    with pytest.raises(GraphFormatError):
        parse_json(json.dumps({"n": 2}))


def test_load_graph_names_and_files(tmp_path):
    assert load_graph("K4") == NAMED["K4"]
    assert load_graph("K6").m == 15
    f = tmp_path / "g.txt"
    f.write_text("# c4\n4\n1 2\n2 3\n3 4\n1 4\n")
    assert load_graph(str(f)) == NAMED["C4"]
    with pytest.raises(GraphFormatError):
        load_graph(str(tmp_path / "missing.txt"))


def test_from_one_based():
    assert from_one_based(3, [(1, 3)]).arcs == ((0, 2),)
