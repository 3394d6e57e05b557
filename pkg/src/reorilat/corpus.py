"""All DAGs up to isomorphism on a few vertices.

Every DAG is isomorphic to one whose arcs all go from a smaller to a larger
label, so it suffices to canonicalize the ``2^(n(n-1)/2)`` upper-triangular
graphs.  The canonical form of a graph is the largest bit code over all
relabellings, where ordered pair number ``k`` (lexicographic order) weighs
``2^(N-1-k)``; decoding the maximum gives the lexicographically smallest arc
list among graphs with that many arcs.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Callable

import numpy as np

from .dag import Dag
from .kernels import max_relabel_codes

MAX_CORPUS_N = 7


def _ordered_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if i != j]


@lru_cache(maxsize=None)
def dags_up_to_iso(n: int) -> tuple[Dag, ...]:
    """One representative per isomorphism class of DAGs on ``n`` vertices."""
    if n < 0 or n > MAX_CORPUS_N:
        raise ValueError(f"corpus supports 0..{MAX_CORPUS_N} vertices")
    if n <= 1:
        return (Dag(n, ()),)
    pairs = _ordered_pairs(n)
    big = len(pairs)
    rank = {pr: k for k, pr in enumerate(pairs)}
    perms = list(permutations(range(n)))
    weights = np.zeros((len(perms), big), dtype=np.int64)
    for p, perm in enumerate(perms):
        for k, (u, v) in enumerate(pairs):
            weights[p, k] = 1 << (big - 1 - rank[(perm[u], perm[v])])
    upper = [rank[(i, j)] for i in range(n) for j in range(i + 1, n)]
    count = 1 << len(upper)
    bits = (np.arange(count, dtype=np.int64)[:, None] >> np.arange(len(upper))) & 1
    indicator = np.zeros((count, big), dtype=np.int64)
    indicator[:, upper] = bits
    codes = np.unique(max_relabel_codes(indicator, weights))
    graphs = []
    for code in codes.tolist():
        arcs = tuple(pairs[k] for k in range(big) if code >> (big - 1 - k) & 1)
        graphs.append(Dag(n, arcs))
    graphs.sort(key=lambda d: (d.m, d.arcs))
    return tuple(graphs)


def corpus(max_n: int, min_n: int = 1, where: Callable[[Dag], bool] | None = None) -> list[Dag]:
    out: list[Dag] = []
    for n in range(min_n, max_n + 1):
        out.extend(d for d in dags_up_to_iso(n) if where is None or where(d))
    return out


def canonical_code(d: Dag) -> int:
    """Max bit code over relabellings (brute force, for checks)."""
    pairs = _ordered_pairs(d.n)
    rank = {pr: k for k, pr in enumerate(pairs)}
    big = len(pairs)
    best = 0
    for perm in permutations(range(d.n)):
        code = 0
        for u, v in d.arcs:
            code |= 1 << (big - 1 - rank[(perm[u], perm[v])])
        best = max(best, code)
    return best
