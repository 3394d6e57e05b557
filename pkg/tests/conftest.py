from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from reorilat.dag import Dag


@st.composite
def dags(draw, min_n: int = 1, max_n: int = 5) -> Dag:
    """Random DAG: a subset of forward pairs, then a random relabelling."""
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    perm = draw(st.permutations(range(n)))
    return Dag(n, tuple(sorted((perm[u], perm[v]) for u, v in chosen)))
