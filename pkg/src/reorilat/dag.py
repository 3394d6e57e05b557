"""Directed acyclic graphs on dense vertex indices, with bitset helpers.

Vertices are ``0..n-1`` internally and ``1..n`` in every text format.  Arcs
are kept sorted lexicographically so equal graphs serialize identically, and
the position of an arc in that list is its bit in every arc bitset.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator

from .errors import GraphFormatError, InvalidGraph

Arc = tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


@dataclass(frozen=True)
class Dag:
    n: int
    arcs: tuple[Arc, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidGraph("negative vertex count")
        seen: set[Arc] = set()
        for arc in self.arcs:
            u, v = arc
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidGraph(f"arc {u + 1} {v + 1} has an endpoint outside 1..{self.n}")
            if u == v:
                raise InvalidGraph(f"self-loop at vertex {u + 1}")
            if (u, v) in seen:
                raise InvalidGraph(f"repeated arc {u + 1} {v + 1}")
            if (v, u) in seen:
                raise InvalidGraph(f"antiparallel arcs between {u + 1} and {v + 1}")
            seen.add((u, v))
        object.__setattr__(self, "arcs", tuple(sorted(seen)))
        if len(self.topological_order) != self.n:
            raise InvalidGraph("the arcs contain a directed cycle")

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def arc_index(self) -> dict[Arc, int]:
        return {arc: i for i, arc in enumerate(self.arcs)}

    @cached_property
    def full_arc_mask(self) -> int:
        return (1 << len(self.arcs)) - 1

    @cached_property
    def full_vertex_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def out_mask(self) -> tuple[int, ...]:
        out = [0] * self.n
        for u, v in self.arcs:
            out[u] |= 1 << v
        return tuple(out)

    @cached_property
    def in_mask(self) -> tuple[int, ...]:
        inn = [0] * self.n
        for u, v in self.arcs:
            inn[v] |= 1 << u
        return tuple(inn)

    @cached_property
    def neighbor_mask(self) -> tuple[int, ...]:
        return tuple(o | i for o, i in zip(self.out_mask, self.in_mask))

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        # Kahn's algorithm; smallest available vertex first keeps it canonical.
        indeg = [0] * self.n
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            indeg[v] += 1
            out[u].append(v)
        ready = sorted(v for v in range(self.n) if indeg[v] == 0)
        order: list[int] = []
        while ready:
            u = ready.pop(0)
            order.append(u)
            for v in out[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    ready.append(v)
            ready.sort()
        return tuple(order)

    @cached_property
    def descendants(self) -> tuple[int, ...]:
        """Strict descendants of every vertex as vertex bitsets."""
        desc = [0] * self.n
        for u in reversed(self.topological_order):
            acc = 0
            for v in iter_bits(self.out_mask[u]):
                acc |= (1 << v) | desc[v]
            desc[u] = acc
        return tuple(desc)

    @cached_property
    def ancestors(self) -> tuple[int, ...]:
        anc = [0] * self.n
        for u in range(self.n):
            for v in iter_bits(self.descendants[u]):
                anc[v] |= 1 << u
        return tuple(anc)

    def has_path(self, u: int, v: int) -> bool:
        return bool(self.descendants[u] >> v & 1)

    def arc_mask(self, arcs: Iterable[Arc]) -> int:
        idx = self.arc_index
        try:
            return mask_of(idx[a] for a in arcs)
        except KeyError as exc:
            u, v = exc.args[0]
            raise InvalidGraph(f"arc {u + 1} {v + 1} is not in the graph") from None

    def arcs_of(self, mask: int) -> list[Arc]:
        return [self.arcs[i] for i in iter_bits(mask)]

    def arcs_inside(self, vertices: int) -> int:
        """Arc bitset of the subgraph induced by a vertex bitset."""
        return mask_of(
            i for i, (u, v) in enumerate(self.arcs) if vertices >> u & 1 and vertices >> v & 1
        )

    def relabel(self, perm: list[int] | tuple[int, ...]) -> Dag:
        return Dag(self.n, tuple((perm[u], perm[v]) for u, v in self.arcs))

    def reversed_graph(self) -> Dag:
        return Dag(self.n, tuple((v, u) for u, v in self.arcs))

    def __repr__(self) -> str:
        arcs = ",".join(f"{u + 1}{v + 1}" if self.n < 10 else f"{u + 1}-{v + 1}" for u, v in self.arcs)
        return f"Dag(n={self.n}, arcs=[{arcs}])"


# ---------------------------------------------------------------- closure / reduction


def transitive_closure(d: Dag) -> Dag:
    return Dag(d.n, tuple((u, v) for u in range(d.n) for v in iter_bits(d.descendants[u])))


def _reach_within(d: Dag, within: int) -> dict[int, int]:
    """Strict descendants of each vertex of ``within`` using only vertices of ``within``."""
    reach: dict[int, int] = {}
    for u in reversed(d.topological_order):
        if not within >> u & 1:
            continue
        acc = 0
        for w in iter_bits(d.out_mask[u] & within):
            acc |= (1 << w) | reach[w]
        reach[u] = acc
    return reach


def reduction_mask(d: Dag, within: int | None = None) -> int:
    """Arc bitset of the transitive reduction of the subgraph induced by ``within``."""
    if within is None:
        within = d.full_vertex_mask
    reach = _reach_within(d, within)
    out = 0
    for i, (u, v) in enumerate(d.arcs):
        if not (within >> u & 1 and within >> v & 1):
            continue
        for w in iter_bits(d.out_mask[u] & within & ~(1 << v)):
            if reach[w] >> v & 1:
                break
        else:
            out |= 1 << i
    return out


def transitive_reduction(d: Dag) -> Dag:
    return Dag(d.n, tuple(d.arcs_of(reduction_mask(d))))


def transitive_support(d: Dag, arc: Arc) -> int:
    """Vertices on some directed path from ``arc[0]`` to ``arc[1]``, endpoints included."""
    if arc not in d.arc_index:
        raise InvalidGraph(f"arc {arc[0] + 1} {arc[1] + 1} is not in the graph")
    u, v = arc
    return ((d.descendants[u] | 1 << u) & (d.ancestors[v] | 1 << v))


# ---------------------------------------------------------------- undirected structure


def components(d: Dag, within: int | None = None) -> list[int]:
    """Connected components (vertex bitsets) of the underlying graph of ``d[within]``."""
    if within is None:
        within = d.full_vertex_mask
    nbr = d.neighbor_mask
    comps: list[int] = []
    left = within
    while left:
        seed = left & -left
        comp = frontier = seed
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= nbr[v]
            nxt &= within & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        left &= ~comp
    return comps


def is_connected_set(d: Dag, vertices: int) -> bool:
    return vertices != 0 and len(components(d, vertices)) == 1


def is_forest(d: Dag) -> bool:
    """Underlying undirected graph has no cycle."""
    return d.m == d.n - len(components(d))


def _is_forest_arcs(d: Dag, arc_mask: int, within: int) -> bool:
    # union-find over the arcs of ``arc_mask``
    parent = list(range(d.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in iter_bits(arc_mask):
        u, v = d.arcs[i]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def is_vertebrate_naive(d: Dag) -> bool:
    """Definition check over all 2^n induced subgraphs."""
    for s in range(1, 1 << d.n):
        if not _is_forest_arcs(d, reduction_mask(d, s), s):
            return False
    return True


def is_vertebrate(d: Dag) -> bool:
    """Only connected vertex sets carrying an undirected cycle can fail."""
    nbr = d.neighbor_mask
    for s in range(1, 1 << d.n):
        size = s.bit_count()
        if size < 3:
            continue
        inside = sum((nbr[v] & s).bit_count() for v in iter_bits(s)) // 2
        if inside < size or not is_connected_set(d, s):
            continue
        if reduction_mask(d, s).bit_count() != size - 1:
            return False
    return True


def is_filled(d: Dag) -> bool:
    nbr = d.neighbor_mask
    for arc in d.arcs:
        ts = transitive_support(d, arc)
        for w in iter_bits(ts):
            if (nbr[w] | 1 << w) & ts != ts:
                return False
    return True


def is_skeletal(d: Dag) -> bool:
    return is_vertebrate(d) and is_filled(d)


def is_chordal(d: Dag) -> bool:
    """Maximum cardinality search followed by a perfect elimination check."""
    nbr = d.neighbor_mask
    weight = [0] * d.n
    numbered = 0
    order: list[int] = []
    for _ in range(d.n):
        best = max((v for v in range(d.n) if not numbered >> v & 1), key=lambda v: (weight[v], -v))
        order.append(best)
        numbered |= 1 << best
        for w in iter_bits(nbr[best] & ~numbered):
            weight[w] += 1
    # ``order`` reversed is a perfect elimination ordering iff the graph is chordal.
    position = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [w for w in iter_bits(nbr[v]) if position[w] < position[v]]
        if not earlier:
            continue
        parent = max(earlier, key=lambda w: position[w])
        rest = mask_of(w for w in earlier if w != parent)
        if rest & ~nbr[parent]:
            return False
    return True


def is_chordful(d: Dag) -> bool:
    """Block graphs are exactly the chordal graphs without an induced diamond."""
    if not is_chordal(d):
        return False
    nbr = d.neighbor_mask
    for quad in combinations(range(d.n), 4):
        edges = sum(1 for a, b in combinations(quad, 2) if nbr[a] >> b & 1)
        if edges == 5:
            return False
    return True


def cliques(d: Dag) -> list[int]:
    """Vertex sets of size >= 2 inducing a tournament, sorted as bitsets."""
    nbr = d.neighbor_mask
    out: list[int] = []

    def extend(current: int, candidates: int) -> None:
        for v in iter_bits(candidates):
            grown = current | 1 << v
            if grown.bit_count() >= 2:
                out.append(grown)
            extend(grown, candidates & nbr[v] & ~((1 << (v + 1)) - 1))

    extend(0, d.full_vertex_mask)
    return sorted(out)


def biconnected_subsets(d: Dag) -> list[int]:
    out: list[int] = []
    for comp in components(d):
        sub = (comp - 1) & comp
        while sub:
            if is_connected_set(d, sub) and is_connected_set(d, comp & ~sub):
                out.append(sub)
            sub = (sub - 1) & comp
    return sorted(out)


# ---------------------------------------------------------------- named graphs


def tournament(n: int) -> Dag:
    return Dag(n, tuple(combinations(range(n), 2)))


def path_graph(n: int) -> Dag:
    return Dag(n, tuple((i, i + 1) for i in range(n - 1)))


def from_one_based(n: int, arcs: Iterable[tuple[int, int]]) -> Dag:
    return Dag(n, tuple((u - 1, v - 1) for u, v in arcs))


NAMED: dict[str, Dag] = {
    "K3": tournament(3),
    "K4": tournament(4),
    "K5": tournament(5),
    "P3": path_graph(3),
    "C4": from_one_based(4, [(1, 2), (2, 3), (3, 4), (1, 4)]),
    "DIA": from_one_based(4, [(1, 2), (1, 3), (2, 4), (3, 4)]),
    "T1": from_one_based(4, [(1, 2), (1, 3), (2, 3), (3, 4)]),
}


# ---------------------------------------------------------------- I/O

_INT = re.compile(r"^[+-]?\d+$")


def parse_text(text: str) -> Dag:
    """First line ``n``, then one ``u v`` line per arc (1-based).  ``#`` starts a comment."""
    n: int | None = None
    arcs: list[Arc] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if not all(_INT.match(f) for f in fields):
            raise GraphFormatError(f"line {lineno}: expected integers, got {line!r}")
        if n is None:
            if len(fields) != 1:
                raise GraphFormatError(f"line {lineno}: first line must hold the vertex count")
            n = int(fields[0])
            if n < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
            continue
        if len(fields) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = int(fields[0]), int(fields[1])
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"line {lineno}: vertex out of range 1..{n}")
        arcs.append((u - 1, v - 1))
    if n is None:
        raise GraphFormatError("line 1: empty graph file")
    try:
        return Dag(n, tuple(arcs))
    except InvalidGraph as exc:
        raise GraphFormatError(str(exc)) from None


def to_text(d: Dag) -> str:
    lines = [str(d.n)] + [f"{u + 1} {v + 1}" for u, v in d.arcs]
    return "\n".join(lines) + "\n"


def parse_json(text: str) -> Dag:
    try:
        data = json.loads(text)
        n = data["n"]
        arcs = data["arcs"]
        if not isinstance(n, int) or not all(
            isinstance(a, list) and len(a) == 2 and all(isinstance(x, int) for x in a) for a in arcs
        ):
            raise TypeError
    except (ValueError, KeyError, TypeError):
        raise GraphFormatError('expected JSON object {"n": int, "arcs": [[u, v], ...]}') from None
    for u, v in arcs:
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"arc [{u}, {v}] has a vertex out of range 1..{n}")
    try:
        return Dag(n, tuple((u - 1, v - 1) for u, v in arcs))
    except InvalidGraph as exc:
        raise GraphFormatError(str(exc)) from None


def to_json(d: Dag) -> str:
    return json.dumps({"n": d.n, "arcs": [[u + 1, v + 1] for u, v in d.arcs]})


def to_dot(d: Dag, reversed_mask: int = 0, name: str = "D") -> str:
    """DOT rendering; reversed arcs are drawn flipped and red, the others green."""
    lines = [f"digraph {name} {{"]
    lines += [f"  {v + 1};" for v in range(d.n)]
    for i, (u, v) in enumerate(d.arcs):
        if reversed_mask >> i & 1:
            lines.append(f"  {v + 1} -> {u + 1} [color=red];")
        else:
            lines.append(f"  {u + 1} -> {v + 1} [color=green];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_graph(spec: str) -> Dag:
    """Read a graph from a file (``.json`` or text) or a builtin name such as ``K4``."""
    if spec in NAMED:
        return NAMED[spec]
    m = re.fullmatch(r"K(\d+)", spec)
    if m:
        return tournament(int(m.group(1)))
    path = Path(spec)
    if not path.exists():
        raise GraphFormatError(f"no such graph file or builtin name: {spec}")
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        return parse_json(text)
    return parse_text(text)
