"""Exact rational realizations of graphical fans and their quotient fans.

Everything lives in ``Q^V`` with :class:`fractions.Fraction` coordinates.  The
chamber of an acyclic reorientation ``E`` is ``{x : x_u <= x_v for (u, v) in
E}``; its vertex on the graphical zonotope is the sum of the heads of ``E``.
Quotientopes are Minkowski sums of shard polytopes, evaluated chamber by
chamber: every summand's normal fan is coarser than the graphical fan, so one
interior point per chamber picks out every vertex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from .congruence import Congruence, RopeIdeal, context, principal_ideal, sylvester_ideal
from .dag import Dag, biconnected_subsets, components, is_chordful, is_connected_set, iter_bits, reduction_mask, transitive_reduction, transitive_support
from .errors import DegenerateConfiguration, NonGenericDirection, OnWall, RepresentationMismatch
from .lattice import Element, ReorientationLattice, _mask, is_acyclic_reorientation
from .lp import linprog, rank, solve
from .poset import FinitePoset, canonical_partition
from .ropes import Rope, is_subrope, rope_system

QVector = tuple[Fraction, ...]

# ------------------------------------------------------------------ vectors


def qvector(values: Iterable[int | Fraction | str]) -> QVector:
    return tuple(Fraction(x) for x in values)


def zero(n: int) -> QVector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> QVector:
    return tuple(Fraction(int(k == i)) for k in range(n))


def indicator(n: int, mask: int) -> QVector:
    return tuple(Fraction(mask >> k & 1) for k in range(n))


def vadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> QVector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> QVector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(s: Fraction | int, a: Sequence[Fraction]) -> QVector:
    return tuple(s * x for x in a)


def vdot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def format_q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_q(text: str) -> Fraction:
    return Fraction(text)


# ------------------------------------------------------------------ polytopes


def in_convex_hull(point: Sequence[Fraction], points: Sequence[Sequence[Fraction]]) -> bool:
    """Whether ``point`` is a convex combination of ``points`` (rational LP)."""
    if not points:
        return False
    k = len(points)
    a_eq = [[p[i] for p in points] for i in range(len(point))] + [[1] * k]
    b_eq = list(point) + [1]
    return linprog([0] * k, a_eq=a_eq, b_eq=b_eq, free=False).status == "optimal"


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of ``vertices``; the list is the exact vertex set."""

    dim: int
    vertices: tuple[QVector, ...]

    @classmethod
    def from_points(cls, dim: int, points: Iterable[Sequence[Fraction]], prune: bool = True) -> VPolytope:
        """Deduplicate, and when ``prune`` drop points inside the hull of the others."""
        pts = sorted({qvector(p) for p in points})
        if prune and len(pts) > 2:
            kept = [p for i, p in enumerate(pts) if not in_convex_hull(p, pts[:i] + pts[i + 1 :])]
            pts = kept
        return cls(dim, tuple(pts))

    def __len__(self) -> int:
        return len(self.vertices)

    def argmax(self, direction: Sequence[Fraction]) -> list[int]:
        vals = [vdot(direction, p) for p in self.vertices]
        best = max(vals)
        return [i for i, x in enumerate(vals) if x == best]

    def support(self, direction: Sequence[Fraction]) -> Fraction:
        return max(vdot(direction, p) for p in self.vertices)

    def is_edge(self, i: int, j: int) -> bool:
        """Whether ``[v_i, v_j]`` is an edge: its midpoint needs no other vertex."""
        pts = self.vertices
        others = [k for k in range(len(pts)) if k not in (i, j)]
        if not others:
            return i != j
        mid = vscale(Fraction(1, 2), vadd(pts[i], pts[j]))
        order = [i, j] + others
        a_eq = [[pts[k][c] for k in order] for c in range(self.dim)] + [[1] * len(order)]
        b_eq = list(mid) + [1]
        c = [0, 0] + [1] * len(others)
        res = linprog(c, a_eq=a_eq, b_eq=b_eq, free=False)
        return res.status == "optimal" and res.value == 0

    def edges(self) -> list[tuple[int, int]]:
        n = len(self.vertices)
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.is_edge(i, j)]

    def to_text(self) -> str:
        return "".join(" ".join(format_q(x) for x in p) + "\n" for p in self.vertices)

    def to_json(self) -> str:
        return json.dumps({"dim": self.dim, "vertices": [[format_q(x) for x in p] for p in self.vertices]})


def parse_vertices(text: str) -> list[QVector]:
    return [qvector(line.split()) for line in text.splitlines() if line.strip()]


@dataclass(frozen=True)
class HRep:
    """``<a, x> = b`` for each equality and ``<a, x> >= b`` for each inequality."""

    dim: int
    equalities: tuple[tuple[QVector, Fraction], ...]
    inequalities: tuple[tuple[QVector, Fraction], ...]

    def contains(self, x: Sequence[Fraction]) -> bool:
        return all(vdot(a, x) == b for a, b in self.equalities) and all(vdot(a, x) >= b for a, b in self.inequalities)

    def tight(self, x: Sequence[Fraction]) -> list[int]:
        return [k for k, (a, b) in enumerate(self.inequalities) if vdot(a, x) == b]

    def is_feasible(self) -> bool:
        res = linprog(
            [0] * self.dim,
            a_ub=[[-c for c in a] for a, _ in self.inequalities],
            b_ub=[-b for _, b in self.inequalities],
            a_eq=[list(a) for a, _ in self.equalities],
            b_eq=[b for _, b in self.equalities],
        )
        return res.status == "optimal"

    def vertices(self) -> list[QVector]:
        """Vertex enumeration by tight bases; fine for a handful of dimensions."""
        eq_rows = [list(a) for a, _ in self.equalities]
        eq_rhs = [b for _, b in self.equalities]
        base = rank(eq_rows) if eq_rows else 0
        need = self.dim - base
        found: set[QVector] = set()
        ineq = list(self.inequalities)
        for combo in combinations(range(len(ineq)), need):
            rows = eq_rows + [list(ineq[k][0]) for k in combo]
            if rank(rows) != self.dim:
                continue
            x = solve(rows, eq_rhs + [ineq[k][1] for k in combo])
            if x is not None and self.contains(x):
                found.add(qvector(x))
        return sorted(found)

    def to_text(self) -> str:
        lines = []
        for sign, items in (("=", self.equalities), (">=", self.inequalities)):
            for a, b in items:
                lines.append(" ".join(format_q(x) for x in a) + f" {sign} {format_q(b)}")
        return "".join(line + "\n" for line in lines)

    def to_json(self) -> str:
        def enc(items):
            return [{"normal": [format_q(x) for x in a], "rhs": format_q(b)} for a, b in items]

        return json.dumps({"dim": self.dim, "equalities": enc(self.equalities), "inequalities": enc(self.inequalities)})


def same_polytope(v: VPolytope, h: HRep) -> bool:
    """Exact comparison: the vertex set of ``h`` equals the vertices of ``v``."""
    if not all(h.contains(p) for p in v.vertices):
        return False
    return set(h.vertices()) == set(v.vertices)


# ------------------------------------------------------------------ graphical fan and zonotope


def oriented_arcs(d: Dag, e: Element) -> list[tuple[int, int]]:
    e = _mask(e)
    return [(v, u) if e >> i & 1 else (u, v) for i, (u, v) in enumerate(d.arcs)]


def linear_extension(n: int, arcs: Iterable[tuple[int, int]]) -> list[int]:
    """Kahn's algorithm, always taking the smallest available vertex."""
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for u, v in arcs:
        succ[u].append(v)
        indeg[v] += 1
    avail = sorted(w for w in range(n) if indeg[w] == 0)
    order = []
    while avail:
        w = avail.pop(0)
        order.append(w)
        for x in succ[w]:
            indeg[x] -= 1
            if indeg[x] == 0:
                avail.append(x)
        avail.sort()
    if len(order) != n:
        raise ValueError("orientation has a cycle")
    return order


def interior_point(d: Dag, e: Element) -> QVector:
    """``x_w`` = rank of ``w`` in the smallest-first linear extension of ``E``."""
    order = linear_extension(d.n, oriented_arcs(d, e))
    x = [Fraction(0)] * d.n
    for r, w in enumerate(order):
        x[w] = Fraction(r)
    return tuple(x)


def _second_extension(d: Dag, e: Element) -> QVector:
    """Rank vector of the largest-first linear extension, used for perturbation."""
    arcs = oriented_arcs(d, e)
    rev = linear_extension(d.n, [(v, u) for u, v in arcs])
    x = [Fraction(0)] * d.n
    for r, w in enumerate(reversed(rev)):
        x[w] = Fraction(r)
    return tuple(x)


def zonotope_vertex(d: Dag, e: Element) -> QVector:
    if not is_acyclic_reorientation(d, _mask(e)):
        raise ValueError("reorientation is not acyclic")
    x = [Fraction(0)] * d.n
    for _, v in oriented_arcs(d, e):
        x[v] += 1
    return tuple(x)


def graphical_zonotope(d: Dag, lattice: ReorientationLattice | None = None) -> VPolytope:
    lat = lattice or ReorientationLattice(d)
    return VPolytope(d.n, tuple(sorted(zonotope_vertex(d, e) for e in lat.elements)))


def component_equalities(d: Dag) -> list[tuple[QVector, Fraction]]:
    """``<1_K, x> = #arcs inside K`` for every connected component ``K``."""
    return [(indicator(d.n, k), Fraction(d.arcs_inside(k).bit_count())) for k in components(d)]


def zonotope_facets(d: Dag) -> HRep:
    ineq = tuple((indicator(d.n, u), Fraction(d.arcs_inside(u).bit_count())) for u in biconnected_subsets(d))
    return HRep(d.n, tuple(component_equalities(d)), ineq)


def fan_chamber_contains(d: Dag, e: Element, x: Sequence[Fraction]) -> bool:
    return all(x[u] <= x[v] for u, v in oriented_arcs(d, e))


def chamber_of(d: Dag, x: Sequence[Fraction]) -> int:
    """Reversed-arc bitset of the open chamber containing ``x``."""
    e = 0
    for i, (u, v) in enumerate(d.arcs):
        if x[u] == x[v]:
            raise OnWall(f"point lies on the hyperplane x{u + 1} = x{v + 1}")
        if x[u] > x[v]:
            e |= 1 << i
    return e


def ray_vector(d: Dag, u_mask: int) -> QVector:
    """``|U| 1_{V-U} - |V-U| 1_U``."""
    inside = u_mask.bit_count()
    outside = d.n - inside
    return tuple(Fraction(-outside if u_mask >> w & 1 else inside) for w in range(d.n))


def ray_in_chamber(d: Dag, e: Element, u_mask: int) -> bool:
    """No arc of ``E`` points from outside ``U`` into ``U``."""
    return not any(not u_mask >> a & 1 and u_mask >> b & 1 for a, b in oriented_arcs(d, e))


def shard_contains(r: Rope, x: Sequence[Fraction]) -> bool:
    if x[r.u] != x[r.v]:
        return False
    return all(x[w] <= x[r.u] for w in iter_bits(r.down)) and all(x[w] >= x[r.u] for w in iter_bits(r.up))


def is_fan_simplicial(d: Dag, lattice: ReorientationLattice | None = None) -> bool:
    """Every chamber is simplicial, i.e. the transitive reduction of every ``E`` is a forest."""
    lat = lattice or ReorientationLattice(d)
    for e in lat.elements:
        oriented = Dag(d.n, tuple(oriented_arcs(d, e)))
        if not _undirected_forest(d.n, oriented.arcs_of(reduction_mask(oriented))):
            return False
    return True


def _undirected_forest(n: int, arcs: Iterable[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in arcs:
        a, b = find(u), find(v)
        if a == b:
            return False
        parent[a] = b
    return True


def simpliciality_matches_chordful(d: Dag) -> bool:
    return is_fan_simplicial(d) == is_chordful(d)


# ------------------------------------------------------------------ shard polytopes


def reduction_path(d: Dag, r: Rope) -> list[int]:
    """Vertices of the reduction path from ``u`` to ``v`` (the support, in order)."""
    sup = transitive_support(d, (r.u, r.v))
    desc = d.descendants
    verts = list(iter_bits(sup))
    verts.sort(key=lambda w: -(desc[w] & sup).bit_count())
    return verts


def alternating_matchings(d: Dag, r: Rope) -> list[tuple[int, int]]:
    """``(M_down, M_up)`` bitsets strictly interleaving along the path, down first, up last."""
    path = reduction_path(d, r)
    lows = (1 << r.u) | r.down
    highs = r.up | (1 << r.v)
    out: list[tuple[int, int]] = [(0, 0)]

    def grow(pos: int, m_down: int, m_up: int) -> None:
        # next element must be a low at position >= pos, then a high after it
        for i in range(pos, len(path)):
            if not lows >> path[i] & 1:
                continue
            for j in range(i + 1, len(path)):
                if highs >> path[j] & 1:
                    md, mu = m_down | 1 << path[i], m_up | 1 << path[j]
                    out.append((md, mu))
                    grow(j + 1, md, mu)

    grow(0, 0, 0)
    return out


def falls_and_rises(d: Dag, r: Rope) -> tuple[list[int], list[int]]:
    path = reduction_path(d, r)
    low_start = (1 << r.u) | r.down
    high_end = r.up | (1 << r.v)
    high_start = (1 << r.u) | r.up
    low_end = r.down | (1 << r.v)
    falls, rises = [], []
    prefix = 0
    for w, w2 in zip(path, path[1:]):
        prefix |= 1 << w
        if low_start >> w & 1 and high_end >> w2 & 1:
            falls.append(prefix)
        if high_start >> w & 1 and low_end >> w2 & 1:
            rises.append(prefix)
    return falls, rises


def shard_hrep(d: Dag, r: Rope) -> HRep:
    n = d.n
    eqs = [(indicator(n, k), Fraction(0)) for k in components(d)]
    for w in iter_bits(((1 << n) - 1) & ~r.support):
        eqs.append((unit(n, w), Fraction(0)))
    ineq = []
    for w in iter_bits(r.down):
        ineq.append((unit(n, w), Fraction(0)))
    for w in iter_bits(r.up):
        ineq.append((vscale(-1, unit(n, w)), Fraction(0)))
    falls, rises = falls_and_rises(d, r)
    for f in falls:
        ineq.append((vscale(-1, indicator(n, f)), Fraction(-1)))
    for s in rises:
        ineq.append((indicator(n, s), Fraction(0)))
    return HRep(n, tuple(eqs), tuple(ineq))


@dataclass(frozen=True)
class ShardPolytope:
    rope: Rope
    vrep: VPolytope
    hrep: HRep


def shard_polytope_vertices(d: Dag, r: Rope) -> VPolytope:
    pts = [vsub(indicator(d.n, md), indicator(d.n, mu)) for md, mu in alternating_matchings(d, r)]
    return VPolytope.from_points(d.n, pts, prune=False)


def shard_polytope(d: Dag, r: Rope, check: bool = True) -> ShardPolytope:
    """V-rep from alternating matchings, H-rep from falls and rises; both must agree."""
    v = shard_polytope_vertices(d, r)
    h = shard_hrep(d, r)
    if check and not same_polytope(v, h):
        raise RepresentationMismatch(f"matchings and falls/rises disagree for {r!r}")
    return ShardPolytope(r, v, h)


def simplex_face(n: int, mask: int) -> VPolytope:
    return VPolytope(n, tuple(sorted(unit(n, w) for w in iter_bits(mask))))


# ------------------------------------------------------------------ Minkowski sums


def minkowski_vertex(summands: Sequence[VPolytope], direction: Sequence[Fraction], weights: Sequence[Fraction] | None = None) -> QVector:
    n = len(direction)
    total = zero(n)
    for k, p in enumerate(summands):
        best = p.argmax(direction)
        if len(best) != 1:
            raise NonGenericDirection(f"summand {k} has {len(best)} maximizing vertices")
        s = Fraction(1) if weights is None else Fraction(weights[k])
        total = vadd(total, vscale(s, p.vertices[best[0]]))
    return total


def _generic_point(d: Dag, e: int, summands: Sequence[VPolytope]) -> QVector:
    x = interior_point(d, e)
    if all(len(p.argmax(x)) == 1 for p in summands):
        return x
    step = _second_extension(d, e)
    for k in range(1, 64):
        y = vadd(x, vscale(k, step))
        if all(len(p.argmax(y)) == 1 for p in summands):
            return y
    raise NonGenericDirection("no generic point found in the chamber")


@dataclass
class MinkowskiGraph:
    """Vertex per chamber, plus chamber-adjacency pairs between distinct vertices."""

    vertex_of_chamber: list[QVector]
    vertices: list[QVector]
    edges: set[tuple[int, int]]


def minkowski_graph(d: Dag, summands: Sequence[VPolytope], weights: Sequence[Fraction] | None = None, lattice: ReorientationLattice | None = None) -> MinkowskiGraph:
    lat = lattice or ReorientationLattice(d)
    per = [minkowski_vertex(summands, _generic_point(d, e, summands), weights) for e in lat.elements]
    verts = sorted(set(per))
    pos = {p: k for k, p in enumerate(verts)}
    edges = set()
    for x, adj in enumerate(lat.cover_adjacency()):
        for y in adj:
            a, b = pos[per[x]], pos[per[y]]
            if a != b:
                edges.add((min(a, b), max(a, b)))
    return MinkowskiGraph(per, verts, edges)


# ------------------------------------------------------------------ quotientopes


class LCG:
    """Seeded linear congruential generator for reproducible rational weights."""

    def __init__(self, seed: int) -> None:
        self.state = seed & 0xFFFFFFFF

    def next(self) -> int:
        self.state = (1664525 * self.state + 1013904223) & 0xFFFFFFFF
        return self.state

    def weight(self) -> Fraction:
        return Fraction(1 + (self.next() >> 16) % 9, 1 + (self.next() >> 16) % 4)


def random_weights(count: int, seed: int) -> list[Fraction]:
    g = LCG(seed)
    return [g.weight() for _ in range(count)]


@dataclass
class Quotientope:
    dag: Dag
    ideal: RopeIdeal
    weights: tuple[Fraction, ...]
    summands: tuple[ShardPolytope, ...]
    graph: MinkowskiGraph
    congruence: Congruence = field(repr=False)

    @cached_property
    def polytope(self) -> VPolytope:
        return VPolytope(self.dag.n, tuple(self.graph.vertices))

    def vertex_of_class(self) -> list[QVector]:
        c = self.congruence
        return [self.graph.vertex_of_chamber[m] for m in c.minima]


def quotientope(d: Dag, ideal: RopeIdeal, weights: Sequence[Fraction] | None = None, check_summands: bool = False) -> Quotientope:
    """Weighted Minkowski sum of the shard polytopes of the ropes in ``ideal``."""
    ropes = ideal.ropes
    if weights is None:
        weights = [Fraction(1)] * len(ropes)
    if len(weights) != len(ropes) or any(Fraction(s) <= 0 for s in weights):
        raise ValueError("need one positive weight per rope of the ideal")
    ws = tuple(Fraction(s) for s in weights)
    summands = tuple(shard_polytope(d, r, check=check_summands) for r in ropes)
    ctx = context(d)
    graph = minkowski_graph(d, [s.vrep for s in summands], ws, ctx.lattice)
    return Quotientope(d, ideal, ws, summands, graph, ctx.congruence(ideal))


@dataclass(frozen=True)
class QuotientopeCheck:
    same_class_same_vertex: bool
    distinct_classes_distinct_vertices: bool
    hasse_matches: bool
    edge_directions_ok: bool
    edges_are_faces: bool | None

    @property
    def ok(self) -> bool:
        return (
            self.same_class_same_vertex
            and self.distinct_classes_distinct_vertices
            and self.hasse_matches
            and self.edge_directions_ok
            and self.edges_are_faces is not False
        )


def _positive_multiple(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    """Whether ``a = t b`` for some ``t > 0``."""
    t = None
    for x, y in zip(a, b):
        if y == 0:
            if x != 0:
                return False
            continue
        s = x / y
        if s <= 0 or (t is not None and s != t):
            return False
        t = s
    return t is not None


def verify_quotientope(q: Quotientope, check_faces: bool = False) -> QuotientopeCheck:
    """(a) one vertex per class, (b) distinct per class, (c) oriented graph = quotient Hasse diagram.

    An edge is oriented upwards when it points along ``e_u - e_v`` for an arc
    ``(u, v)`` of ``D``, which is the direction of the reorientation that
    reverses ``(u, v)``.  With ``check_faces`` every pair of vertices is also
    tested for being an edge of the hull (rational LP).
    """
    c = q.congruence
    d = q.dag
    lat = c.ctx.lattice
    per = q.graph.vertex_of_chamber
    a_ok = all(per[x] == per[c.minima[c.class_of[x]]] for x in range(len(lat)))
    cls_vertex = q.vertex_of_class()
    b_ok = len(set(cls_vertex)) == len(cls_vertex)
    pos = {p: k for k, p in enumerate(q.graph.vertices)}
    # oriented polytope graph, built from edge directions only
    arcs_dirs = [vsub(unit(d.n, u), unit(d.n, v)) for u, v in d.arcs]
    oriented: set[tuple[int, int]] = set()
    dirs_ok = True
    for i, j in q.graph.edges:
        diff = vsub(q.graph.vertices[j], q.graph.vertices[i])
        if any(_positive_multiple(diff, a) for a in arcs_dirs):
            oriented.add((i, j))
        elif any(_positive_multiple(vscale(-1, diff), a) for a in arcs_dirs):
            oriented.add((j, i))
        else:
            dirs_ok = False
    hasse = {(pos[cls_vertex[a]], pos[cls_vertex[b]]) for a, b in c.quotient.covers} if b_ok else set()
    c_ok = b_ok and oriented == hasse
    faces = None
    if check_faces:
        poly = q.polytope
        faces = set(poly.edges()) == set(q.graph.edges)
    return QuotientopeCheck(a_ok, b_ok, c_ok, dirs_ok, faces)


# ------------------------------------------------------------------ associahedra


def associahedron_removahedron(d: Dag) -> HRep:
    """Zonotope equalities plus the facets of biconnected sets connected in the reduction."""
    red = transitive_reduction(d)
    ineq = tuple(
        (indicator(d.n, u), Fraction(d.arcs_inside(u).bit_count()))
        for u in biconnected_subsets(d)
        if is_connected_set(red, u)
    )
    return HRep(d.n, tuple(component_equalities(d)), ineq)


def associahedron_minkowski(d: Dag, lattice: ReorientationLattice | None = None) -> VPolytope:
    """Sum of the simplex faces on the reduction paths of the arcs of ``d``."""
    lat = lattice or ReorientationLattice(d)
    summands = [simplex_face(d.n, transitive_support(d, a)) for a in d.arcs]
    g = minkowski_graph(d, summands, lattice=lat)
    return VPolytope(d.n, tuple(g.vertices))


@dataclass(frozen=True)
class RemovahedronCheck:
    vertices_satisfy: bool
    support_matches: bool
    no_slack_inequality: bool
    same_vertex_set: bool | None
    vertex_count: int

    @property
    def ok(self) -> bool:
        return self.vertices_satisfy and self.support_matches and self.no_slack_inequality and self.same_vertex_set is not False


def check_removahedron(d: Dag, full: bool = True) -> RemovahedronCheck:
    h = associahedron_removahedron(d)
    v = associahedron_minkowski(d)
    sat = all(h.contains(p) for p in v.vertices)
    support = all(min(vdot(a, p) for p in v.vertices) == b for a, b in h.inequalities)
    no_slack = all(any(vdot(a, p) == b for p in v.vertices) for a, b in h.inequalities)
    same = set(h.vertices()) == set(v.vertices) if full else None
    return RemovahedronCheck(sat, support, no_slack, same, len(v))


def associahedron(d: Dag, full: bool = False) -> VPolytope:
    """Minkowski vertices, after checking them against the removahedron."""
    if not check_removahedron(d, full=full).ok:
        raise RepresentationMismatch("removahedron and Minkowski sum disagree")
    return associahedron_minkowski(d)


def sylvester_quotientope(d: Dag) -> Quotientope:
    return quotientope(d, sylvester_ideal(d))


def refinement_matches(d: Dag, ideal: RopeIdeal) -> bool:
    """The classes of ``ideal`` are the common refinement of its generators' principal congruences."""
    ctx = context(d)
    target = canonical_partition(ctx.congruence(ideal).class_of)
    gens = ideal.generators()
    if not gens:
        return len(set(target)) == 1
    parts = [ctx.congruence(principal_ideal(d, r)).class_of for r in gens]
    ids: dict[tuple[int, ...], int] = {}
    meet = canonical_partition([ids.setdefault(tuple(p[x] for p in parts), len(ids)) for x in range(len(ctx.lattice))])
    return meet == target


def shard_wall_points(d: Dag, r: Rope, grid: int = 3) -> tuple[bool, bool]:
    """Sample ``{0..grid}^V``: (walls of the shard polytope lie in subrope shards, the shard lies in the walls)."""
    p = shard_polytope(d, r, check=False).vrep
    subs = [s for s in rope_system(d).ropes if is_subrope(s, r)]
    inside_ok = covers_ok = True
    for pt in product(range(grid + 1), repeat=d.n):
        x = qvector(pt)
        on_wall = len(p.argmax(x)) > 1
        if on_wall and not any(shard_contains(s, x) for s in subs):
            inside_ok = False
        if shard_contains(r, x) and not on_wall:
            covers_ok = False
    return inside_ok, covers_ok


# ------------------------------------------------------------------ posets of regions


@dataclass(frozen=True)
class VectorConfiguration:
    vectors: tuple[QVector, ...]

    def __post_init__(self) -> None:
        if not self.vectors:
            raise DegenerateConfiguration("empty configuration")
        dim = len(self.vectors[0])
        if any(len(a) != dim for a in self.vectors):
            raise DegenerateConfiguration("vectors of different lengths")
        if any(all(x == 0 for x in a) for a in self.vectors):
            raise DegenerateConfiguration("zero vector")
        # some c with <c, a> >= 1 for all a
        res = linprog([0] * dim, a_ub=[[-x for x in a] for a in self.vectors], b_ub=[-1] * len(self.vectors))
        if res.status != "optimal":
            raise DegenerateConfiguration("vectors do not lie in an open halfspace")

    @classmethod
    def of(cls, vectors: Iterable[Iterable[int | Fraction]]) -> VectorConfiguration:
        return cls(tuple(qvector(a) for a in vectors))

    @property
    def dim(self) -> int:
        return len(self.vectors[0])

    def __len__(self) -> int:
        return len(self.vectors)

    @cached_property
    def regions(self) -> list[int]:
        """Positive sets (bitsets over the vectors) of all regions, sorted."""
        found = [0]
        for k in range(len(self.vectors)):
            nxt = []
            for s in found:
                for bit in (0, 1 << k):
                    if self._feasible(s | bit, k + 1):
                        nxt.append(s | bit)
            found = nxt
        return sorted(found)

    def _feasible(self, positive: int, upto: int) -> bool:
        rows, rhs = [], []
        for i in range(upto):
            a = self.vectors[i]
            if positive >> i & 1:
                rows.append([-x for x in a])
            else:
                rows.append(list(a))
            rhs.append(-1)
        return linprog([0] * self.dim, a_ub=rows, b_ub=rhs).status == "optimal"


def incidence_configuration(d: Dag) -> VectorConfiguration:
    n = d.n
    return VectorConfiguration(tuple(vsub(unit(n, u), unit(n, v)) for u, v in d.arcs))


def poset_of_regions(cfg: VectorConfiguration) -> FinitePoset:
    return FinitePoset.from_subsets(cfg.regions)


def regions_lattice(cfg: VectorConfiguration) -> bool:
    return poset_of_regions(cfg).is_lattice()


def _cone_is_simplicial(vectors: Sequence[QVector]) -> bool:
    """Extreme rays of the (pointed) cone are linearly independent."""
    rays: list[QVector] = []
    for a in vectors:
        if not any(_positive_multiple(a, b) for b in rays):
            rays.append(a)
    extreme = []
    for i, a in enumerate(rays):
        others = rays[:i] + rays[i + 1 :]
        if not others:
            extreme.append(a)
            continue
        k = len(others)
        a_eq = [[o[c] for o in others] for c in range(len(a))]
        if linprog([0] * k, a_eq=a_eq, b_eq=list(a), free=False).status != "optimal":
            extreme.append(a)
    return rank(extreme) == len(extreme)


def flats(cfg: VectorConfiguration) -> list[int]:
    """Bitsets ``A ∩ span(S)`` over all subsets ``S``; each flat once."""
    vecs = cfg.vectors
    out: set[int] = set()
    m = len(vecs)
    for s in range(1 << m):
        rows = [list(vecs[i]) for i in iter_bits(s)]
        r = rank(rows) if rows else 0
        closure = 0
        for j in range(m):
            if rank(rows + [list(vecs[j])]) == r:
                closure |= 1 << j
        out.add(closure)
    return sorted(out)


def check_simplicial_slices(cfg: VectorConfiguration) -> bool:
    """For every linear hyperplane ``H``, the cone of ``A ∩ H`` is simplicial."""
    for f in flats(cfg):
        members = [cfg.vectors[i] for i in iter_bits(f)]
        r = rank([list(a) for a in members]) if members else 0
        if r < cfg.dim and not _cone_is_simplicial(members):
            return False
    return True


NONLATTICE_CONFIGURATION = VectorConfiguration.of(
    [(1, 0, 0, 0), (0, 1, 0, 0), (-1, -2, -1, 0), (2, 1, 1, 0), (0, 0, 1, -1), (0, 0, 0, -1)]
)
B4_CONFIGURATION = VectorConfiguration.of(
    [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 0), (0, 1, 2, 2)]
)
