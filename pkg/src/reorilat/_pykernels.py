"""Pure-Python implementations of the hot kernels.

``_ckernels.pyx`` mirrors these functions one for one; ``kernels.py`` picks the
compiled module when it imports and falls back to this one otherwise.  Both
must return identical results, including search witnesses.
"""

from __future__ import annotations

import random
from collections import deque

import numpy as np


class SearchBudgetExceeded(RuntimeError):
    pass


def _reach(n: int, out: list[int]) -> list[int] | None:
    """Strict descendant bitsets of a digraph given by out-neighbour bitsets; None if cyclic."""
    indeg = [0] * n
    for u in range(n):
        m = out[u]
        while m:
            low = m & -m
            indeg[low.bit_length() - 1] += 1
            m ^= low
    order = [v for v in range(n) if indeg[v] == 0]
    head = 0
    while head < len(order):
        u = order[head]
        head += 1
        m = out[u]
        while m:
            low = m & -m
            v = low.bit_length() - 1
            indeg[v] -= 1
            if indeg[v] == 0:
                order.append(v)
            m ^= low
    if len(order) != n:
        return None
    reach = [0] * n
    for u in reversed(order):
        acc = 0
        m = out[u]
        while m:
            low = m & -m
            v = low.bit_length() - 1
            acc |= low | reach[v]
            m ^= low
        reach[u] = acc
    return reach


def flippable_mask(n: int, tails: list[int], heads: list[int], reversed_mask: int) -> int:
    """Arcs lying in the transitive reduction of the reoriented graph."""
    m = len(tails)
    out = [0] * n
    src = [0] * m
    dst = [0] * m
    for i in range(m):
        if reversed_mask >> i & 1:
            a, b = heads[i], tails[i]
        else:
            a, b = tails[i], heads[i]
        src[i] = a
        dst[i] = b
        out[a] |= 1 << b
    reach = _reach(n, out)
    if reach is None:
        raise ValueError("reorientation is not acyclic")
    flips = 0
    for i in range(m):
        a, b = src[i], dst[i]
        others = out[a] & ~(1 << b)
        redundant = False
        while others:
            low = others & -others
            if reach[low.bit_length() - 1] >> b & 1:
                redundant = True
                break
            others ^= low
        if not redundant:
            flips |= 1 << i
    return flips


def is_acyclic(n: int, tails: list[int], heads: list[int], reversed_mask: int) -> bool:
    out = [0] * n
    for i in range(len(tails)):
        if reversed_mask >> i & 1:
            out[heads[i]] |= 1 << tails[i]
        else:
            out[tails[i]] |= 1 << heads[i]
    return _reach(n, out) is not None


def acyclic_reorientations(n: int, tails: list[int], heads: list[int], limit: int = -1) -> list[int] | None:
    """All acyclic reversed-arc bitsets, found breadth-first from the empty set by flips.

    Returns None as soon as more than ``limit`` elements are found (``limit < 0``: no cap).
    """
    seen = {0}
    queue = deque([0])
    while queue:
        state = queue.popleft()
        flips = flippable_mask(n, tails, heads, state)
        while flips:
            low = flips & -flips
            nxt = state ^ low
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
            flips ^= low
        if 0 <= limit < len(seen):
            return None
    return sorted(seen)


# ---------------------------------------------------------------- Hamiltonian search


def _bipartite_sides(adj: list[list[int]]) -> tuple[int, int] | None:
    colour = [-1] * len(adj)
    counts = [0, 0]
    for s in range(len(adj)):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        counts[0] += 1
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    counts[colour[w]] += 1
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return None
    return counts[0], counts[1]


def hamiltonian_search(adj: list[list[int]], cycle: bool, max_nodes: int = 50_000_000) -> list[int] | None:
    """Backtracking search for a Hamiltonian cycle (or path).

    ``adj`` holds sorted neighbour lists.  Unless a degree argument forces the
    next vertex, neighbours are tried by fewest unvisited neighbours first, ties
    broken by a rank array.  Cycles start at vertex 0; paths try start vertices
    in rank order.  See :func:`restarting` for the budget schedule.
    """
    pre = _precheck(adj, cycle)
    if pre is not False:
        return pre
    adjset = [set(a) for a in adj]

    def core(rank: list[int], limit: int) -> list[int] | None:
        budget = [limit]
        starts = [0] if cycle else sorted(range(len(adj)), key=rank.__getitem__)
        for s in starts:
            result = _search_from(adj, adjset, s, cycle, rank, budget)
            if result is not None:
                return result
        return None

    return restarting(core, len(adj), max_nodes)


def _precheck(adj: list[list[int]], cycle: bool) -> list[int] | None | bool:
    """Trivial answers; False means a search is needed."""
    nv = len(adj)
    if nv == 0:
        return []
    if nv == 1:
        return [0]
    if cycle and nv < 3:
        return None
    sides = _bipartite_sides(adj)
    if sides is not None:
        gap = abs(sides[0] - sides[1])
        if (cycle and gap != 0) or (not cycle and gap > 1):
            return None
    return False


def restarting(core, nv: int, max_nodes: int) -> list[int] | None:
    """Run complete searches under growing budgets with reshuffled tie-breaks.

    Each attempt is exhaustive within its budget, so both a witness and a
    finished empty search are definitive.  Backtracking on these graphs is
    heavy-tailed and restarts cut the tail.  The first attempt breaks ties by
    ascending index; later ones use a fixed-seed shuffle, so results are
    deterministic.
    """
    rng = random.Random(20240229)
    rank = list(range(nv))
    limit = 10 * nv
    spent = 0
    while True:
        limit = min(limit, max_nodes - spent)
        try:
            return core(rank, limit)
        except SearchBudgetExceeded:
            spent += limit
            if spent >= max_nodes:
                raise SearchBudgetExceeded(f"Hamiltonian search exceeded {max_nodes} nodes") from None
        rng.shuffle(rank)
        limit = limit * 5 // 4


def _search_from(adj, adjset, s, cycle, rank, budget):
    nv = len(adj)
    visited = [False] * nv
    free = [len(a) for a in adj]  # number of unvisited neighbours
    path = [s]
    visited[s] = True
    for w in adj[s]:
        free[w] -= 1

    def viable(c: int) -> bool:
        # every unvisited vertex must still be able to get its path/cycle degree
        remaining = nv - len(path)
        if remaining == 0:
            return True
        for w in range(nv):
            if visited[w]:
                continue
            ends = (1 if w in adjset[c] else 0)
            if cycle and c != s and w in adjset[s]:
                ends += 1
            usable = free[w] + ends
            if cycle:
                if remaining == 1:
                    if not (w in adjset[c] and w in adjset[s]):
                        return False
                elif usable < 2:
                    return False
            elif usable < 1:
                return False
        # the unvisited vertices must be reachable from c through unvisited vertices
        seen = {c}
        stack = [c]
        count = 0
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not visited[w] and w not in seen:
                    seen.add(w)
                    count += 1
                    stack.append(w)
        return count == remaining

    def candidates(c: int) -> list[int]:
        opts = [w for w in adj[c] if not visited[w]]
        if cycle and len(path) > 1:
            forced = []
            for w in opts:
                ends = 1 + (1 if c != s and w in adjset[s] else 0)
                if free[w] + ends == 2:
                    forced.append(w)
            if len(forced) > 1:
                return []
            if forced:
                return forced
        opts.sort(key=lambda w: (free[w], rank[w]))
        return opts

    def rec() -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchBudgetExceeded("Hamiltonian search exceeded its node budget")
        c = path[-1]
        if len(path) == nv:
            return (not cycle) or (s in adjset[c])
        for w in candidates(c):
            visited[w] = True
            path.append(w)
            for x in adj[w]:
                free[x] -= 1
            if viable(w) and rec():
                return True
            for x in adj[w]:
                free[x] += 1
            path.pop()
            visited[w] = False
        return False

    if not viable(s):
        return None
    return list(path) if rec() else None


# ---------------------------------------------------------------- canonical forms


def max_relabel_codes(indicator: np.ndarray, weight_table: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """Max relabelled bit code of each graph.

    ``indicator[g, k]`` is 1 when graph ``g`` has ordered pair ``k``;
    ``weight_table[p, k]`` is the weight of pair ``k`` after permutation ``p``.
    Weights are distinct powers of two, so each row sum is a bit code.
    """
    out = np.empty(indicator.shape[0], dtype=np.int64)
    wt = weight_table.T
    for start in range(0, indicator.shape[0], chunk):
        block = indicator[start : start + chunk] @ wt
        out[start : start + chunk] = block.max(axis=1)
    return out
