"""Lattice congruences of the reorientation lattice, indexed by rope ideals.

A congruence is determined by the set of ropes whose join irreducibles it
leaves uncontracted; these sets are exactly the lower ideals of the subrope
order.  Classes are computed by union-find over the covers of the lattice: a
cover is contracted when the rope of its minimal joinand lies outside the
ideal.  The characterization of class minima by rope diagrams is computed
separately and compared.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import networkx as nx

from . import kernels
from .dag import Dag, is_skeletal, iter_bits, mask_of, transitive_support
from .errors import InvalidIdeal, NotALattice, NotPathful, NotSkeletal, NotStronglyPathful
from .lattice import ReorientationLattice, _mask, is_vertebrate, k_join
from .poset import FinitePoset
from .restriction import RestrictionMap, is_pathful, is_strongly_pathful, lift, restrict
from .ropes import Rope, RopeSystem, bidiagrams, diagram_of, meet_diagram_of, rope_of_join_irreducible, rope_system


def _require_skeletal(d: Dag) -> None:
    if not is_skeletal(d):
        raise NotSkeletal(f"{d!r} is not skeletal")


# ------------------------------------------------------------------ ideals


@dataclass(frozen=True)
class RopeIdeal:
    """Lower ideal of the subrope order, as a bitset over rope indices."""

    dag: Dag
    members: int

    def __post_init__(self) -> None:
        rs = rope_system(self.dag)
        if self.members >> len(rs):
            raise InvalidIdeal("member bitset refers to ropes that do not exist")
        for i in iter_bits(self.members):
            if rs.below[i] & ~self.members:
                r = rs.ropes[i]
                s = rs.ropes[(rs.below[i] & ~self.members).bit_length() - 1]
                raise InvalidIdeal(f"{r!r} is in the ideal but its subrope {s!r} is not")

    @property
    def system(self) -> RopeSystem:
        return rope_system(self.dag)

    @property
    def ropes(self) -> list[Rope]:
        return self.system.ropes_of(self.members)

    def __contains__(self, r: Rope) -> bool:
        return bool(self.members >> self.system.rope_index(r) & 1)

    def __len__(self) -> int:
        return self.members.bit_count()

    def generators(self) -> list[Rope]:
        """Maximal ropes of the ideal."""
        rs = self.system
        return [rs.ropes[i] for i in iter_bits(self.members) if rs.above[i] & self.members == 1 << i]

    def to_text(self) -> str:
        return "\n".join(r.to_text() for r in self.ropes)

    def to_json(self) -> str:
        return json.dumps([r.to_dict() for r in self.ropes])


def ideal_from_ropes(d: Dag, ropes: Iterable[Rope], close: bool = False) -> RopeIdeal:
    """Ideal with the given members; ``close`` adds every subrope first."""
    rs = rope_system(d)
    mask = rs.mask(ropes)
    if close:
        for i in list(iter_bits(mask)):
            mask |= rs.below[i]
    return RopeIdeal(d, mask)


def full_ideal(d: Dag) -> RopeIdeal:
    return RopeIdeal(d, (1 << len(rope_system(d))) - 1)


def coherent_ideal(d: Dag, down_dec: int, up_dec: int) -> RopeIdeal:
    """Ropes whose down set lies in ``down_dec`` and up set in ``up_dec`` (vertex bitsets)."""
    rs = rope_system(d)
    return RopeIdeal(d, mask_of(i for i, r in enumerate(rs.ropes) if not r.down & ~down_dec and not r.up & ~up_dec))


def sylvester_ideal(d: Dag) -> RopeIdeal:
    return coherent_ideal(d, d.full_vertex_mask, 0)


def cambrian_ideal(d: Dag, down_dec: int) -> RopeIdeal:
    return coherent_ideal(d, down_dec, d.full_vertex_mask & ~down_dec)


def principal_ideal(d: Dag, r: Rope) -> RopeIdeal:
    rs = rope_system(d)
    return RopeIdeal(d, rs.below[rs.rope_index(r)])


def enumerate_ideals(d: Dag) -> Iterator[RopeIdeal]:
    """All lower ideals of the subrope order (the empty one included)."""
    for mask in ideal_masks(d):
        yield RopeIdeal(d, mask)


def ideal_masks(d: Dag) -> list[int]:
    """Bitsets of all lower ideals, by include/exclude over a linear extension."""
    rs = rope_system(d)
    n = len(rs)
    below, above = rs.below, rs.above
    order = sorted(range(n), key=lambda i: (below[i].bit_count(), i))
    out: list[int] = []
    stack = [(0, 0, 0)]
    while stack:
        k, inc, exc = stack.pop()
        if k == n:
            out.append(inc)
            continue
        i = order[k]
        if exc >> i & 1:
            stack.append((k + 1, inc, exc))
            continue
        stack.append((k + 1, inc, exc | above[i]))
        if not (below[i] & ~(1 << i)) & ~inc:
            stack.append((k + 1, inc | 1 << i, exc))
    out.sort()
    return out


# ------------------------------------------------------------------ per-graph data


class CongruenceContext:
    """Lattice, ropes and per-cover rope labels of one skeletal graph, shared by all its congruences."""

    def __init__(self, d: Dag, cap: int | None = None) -> None:
        _require_skeletal(d)
        self.dag = d
        self.lattice = ReorientationLattice(d, cap)
        self.ropes = rope_system(d)

    @cached_property
    def covers(self) -> list[tuple[int, int, int]]:
        """``(lower, upper, rope index of the minimal joinand)`` for every cover."""
        lat, rs, d = self.lattice, self.ropes, self.dag
        out = []
        for hi, (e, f) in enumerate(zip(lat.elements, lat.flippable)):
            for a in iter_bits(e & f):
                lo = lat.index[e ^ 1 << a]
                j = k_join(d, lat.elements[lo], e)
                out.append((lo, hi, rs.index[rope_of_join_irreducible(d, j)]))
        return out

    @cached_property
    def join_diagrams(self) -> list[int]:
        rs = self.ropes
        return [rs.mask(diagram_of(self.dag, e)) for e in self.lattice.elements]

    @cached_property
    def meet_diagrams(self) -> list[int]:
        rs = self.ropes
        return [rs.mask(meet_diagram_of(self.dag, e)) for e in self.lattice.elements]

    def congruence(self, ideal: RopeIdeal | int) -> Congruence:
        mask = ideal.members if isinstance(ideal, RopeIdeal) else ideal
        if not isinstance(ideal, RopeIdeal):
            ideal = RopeIdeal(self.dag, mask)
        size = len(self.lattice)
        parent = list(range(size))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for lo, hi, r in self.covers:
            if not mask >> r & 1:
                a, b = find(lo), find(hi)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        roots: dict[int, int] = {}
        class_of = []
        for x in range(size):
            class_of.append(roots.setdefault(find(x), len(roots)))
        return Congruence(self, ideal, tuple(class_of))


@lru_cache(maxsize=64)
def context(d: Dag) -> CongruenceContext:
    return CongruenceContext(d)


# ------------------------------------------------------------------ congruences


@dataclass(frozen=True, eq=False)
class Congruence:
    ctx: CongruenceContext = field(repr=False)
    ideal: RopeIdeal
    class_of: tuple[int, ...]

    @property
    def dag(self) -> Dag:
        return self.ctx.dag

    @cached_property
    def classes(self) -> list[int]:
        """Element-index bitsets, one per class, ordered by their least element."""
        out = [0] * (max(self.class_of) + 1 if self.class_of else 0)
        for x, c in enumerate(self.class_of):
            out[c] |= 1 << x
        return out

    def __len__(self) -> int:
        return len(self.classes)

    @cached_property
    def minima(self) -> list[int]:
        """Index of the least element of every class (classes are intervals)."""
        p = self.ctx.lattice.poset
        out = []
        for cls in self.classes:
            lo = [x for x in iter_bits(cls) if p.down[x] & cls == 1 << x]
            if len(lo) != 1:
                raise AssertionError("congruence class without a unique minimum")
            out.append(lo[0])
        return out

    @cached_property
    def maxima(self) -> list[int]:
        p = self.ctx.lattice.poset
        out = []
        for cls in self.classes:
            hi = [x for x in iter_bits(cls) if p.up[x] & cls == 1 << x]
            if len(hi) != 1:
                raise AssertionError("congruence class without a unique maximum")
            out.append(hi[0])
        return out

    def minima_by_diagram(self) -> list[int]:
        """Elements whose join diagram lies in the ideal, in index order."""
        m = self.ideal.members
        return [x for x, dg in enumerate(self.ctx.join_diagrams) if not dg & ~m]

    def maxima_by_diagram(self) -> list[int]:
        m = self.ideal.members
        return [x for x, dg in enumerate(self.ctx.meet_diagrams) if not dg & ~m]

    def class_elements(self, k: int) -> list[int]:
        lat = self.ctx.lattice
        return [lat.elements[x] for x in iter_bits(self.classes[k])]

    def class_of_element(self, e) -> int:
        return self.class_of[self.ctx.lattice.index[_mask(e)]]

    def classes_are_intervals(self) -> bool:
        p = self.ctx.lattice.poset
        for cls, lo, hi in zip(self.classes, self.minima, self.maxima):
            if p.up[lo] & p.down[hi] != cls:
                return False
        return True

    def respects_operations(self) -> bool:
        """class(x ∨ y) and class(x ∧ y) depend only on the classes of x and y."""
        p = self.ctx.lattice.poset
        jt, mt = p.join_table, p.meet_table
        size = p.size
        reps = self.minima
        cls = self.class_of
        for x in range(size):
            cx = reps[cls[x]]
            for y in range(size):
                cy = reps[cls[y]]
                if cls[jt[x][y]] != cls[jt[cx][cy]] or cls[mt[x][y]] != cls[mt[cx][cy]]:
                    return False
        return True

    @cached_property
    def quotient(self) -> FinitePoset:
        """Induced order on class minima, labelled by the minima's reversed-arc bitsets."""
        lat = self.ctx.lattice
        return lat.poset.induced(self.minima)

    def quotient_cover_graph(self) -> list[list[int]]:
        """Cover graph of the quotient, classes indexed as in ``classes``."""
        adj: list[set[int]] = [set() for _ in self.classes]
        cls = self.class_of
        for lo, hi, _ in self.ctx.covers:
            a, b = cls[lo], cls[hi]
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        return [sorted(s) for s in adj]

    def verify(self) -> None:
        """Cross-checks that do not depend on the construction; raises AssertionError."""
        if self.minima != self.minima_by_diagram():
            raise AssertionError("class minima differ from the diagram characterization")
        if sorted(self.maxima) != self.maxima_by_diagram():
            raise AssertionError("class maxima differ from the diagram characterization")
        if not self.classes_are_intervals():
            raise AssertionError("some class is not an interval")
        q = self.quotient
        if not q.is_lattice():
            raise AssertionError("quotient is not a lattice")
        cover_graph = {tuple(sorted(e)) for e in _undirected(q.hasse_adjacency())}
        classes_graph = {(a, b) for a, nb in enumerate(self.quotient_cover_graph()) for b in nb if a < b}
        if cover_graph != classes_graph:
            raise AssertionError("quotient Hasse diagram differs from contracted cover graph")

    def to_json_dict(self) -> dict:
        lat = self.ctx.lattice
        d = self.dag
        q = self.quotient
        return {
            "graph": {"n": d.n, "arcs": [[u + 1, v + 1] for u, v in d.arcs]},
            "ideal": [r.to_dict() for r in self.ideal.ropes],
            "classes": [[_reversed_labels(d, lat.elements[x]) for x in iter_bits(c)] for c in self.classes],
            "quotient_covers": [list(c) for c in q.covers],
            "partial_reorientations": [
                {
                    "P": partial_reorientation(self, [k]).oriented_arcs_1based(),
                    "R": partial_reorientation(self, [k]).reduction().oriented_arcs_1based(),
                }
                for k in range(len(self.classes))
            ],
        }


def _undirected(adj: Sequence[Sequence[int]]) -> Iterator[tuple[int, int]]:
    for a, nb in enumerate(adj):
        for b in nb:
            yield (a, b)


def _reversed_labels(d: Dag, e: int) -> list[list[int]]:
    return [[u + 1, v + 1] for u, v in d.arcs_of(e)]


def congruence_from_ideal(d: Dag, ideal: RopeIdeal) -> Congruence:
    _require_skeletal(d)
    if ideal.dag != d:
        raise InvalidIdeal("the ideal belongs to another graph")
    c = context(d).congruence(ideal)
    if c.minima != c.minima_by_diagram():
        raise AssertionError("class minima differ from the diagram characterization")
    return c


def quotient(c: Congruence) -> FinitePoset:
    return c.quotient


def ideal_of_partition(d: Dag, class_of: Sequence[int]) -> RopeIdeal:
    """Ropes of the join irreducibles not merged with their unique lower cover."""
    ctx = context(d)
    lat = ctx.lattice
    rs = ctx.ropes
    mask = 0
    for j in lat.join_irreducible_indices():
        e = lat.elements[j]
        below = lat.index[e & ~lat.flippable[j]]
        if class_of[below] != class_of[j]:
            mask |= 1 << rs.index[rope_of_join_irreducible(d, e)]
    return RopeIdeal(d, mask)


# ------------------------------------------------------------------ decorations


def min_max_by_decoration(d: Dag, e, down_dec: int, up_dec: int) -> dict[str, bool]:
    """Whether ``e`` is least / greatest in its coherent class, read off all reversed / kept arcs."""
    _require_skeletal(d)
    from .ropes import rope_at

    e = _mask(e)
    is_min = is_max = True
    for a in range(d.m):
        r = rope_at(d, e, a)
        ok = not r.down & ~down_dec and not r.up & ~up_dec
        if e >> a & 1:
            is_min = is_min and ok
        else:
            is_max = is_max and ok
    return {"is_min": is_min, "is_max": is_max}


# ------------------------------------------------------------------ partial reorientations


@dataclass(frozen=True)
class PartialReorientation:
    """Arcs of ``dag`` kept in their direction (``forward``) or reversed (``backward``)."""

    dag: Dag
    forward: int
    backward: int

    def __post_init__(self) -> None:
        if self.forward & self.backward:
            raise ValueError("an arc cannot be both kept and reversed")

    def oriented_arcs(self) -> list[tuple[int, int]]:
        out = []
        for i, (u, v) in enumerate(self.dag.arcs):
            if self.forward >> i & 1:
                out.append((u, v))
            elif self.backward >> i & 1:
                out.append((v, u))
        return out

    def oriented_arcs_1based(self) -> list[list[int]]:
        return [[u + 1, v + 1] for u, v in self.oriented_arcs()]

    def __len__(self) -> int:
        return (self.forward | self.backward).bit_count()

    def leq(self, other: PartialReorientation) -> bool:
        """More reversed arcs and fewer kept arcs means larger."""
        return not self.backward & ~other.backward and not other.forward & ~self.forward

    def is_acyclic(self) -> bool:
        g = nx.DiGraph(self.oriented_arcs())
        return nx.is_directed_acyclic_graph(g)

    def reduction(self) -> PartialReorientation:
        """Transitive reduction of the oriented arc set."""
        oriented = self.oriented_arcs()
        g = nx.DiGraph()
        g.add_nodes_from(range(self.dag.n))
        g.add_edges_from(oriented)
        red = nx.transitive_reduction(g)
        fwd = bwd = 0
        idx = self.dag.arc_index
        for u, v in red.edges:
            if (u, v) in idx and self.forward >> idx[(u, v)] & 1:
                fwd |= 1 << idx[(u, v)]
            else:
                bwd |= 1 << idx[(v, u)]
        return PartialReorientation(self.dag, fwd, bwd)

    def is_closed(self) -> bool:
        """Every arc of ``dag`` whose endpoints are joined by a path of ``self`` belongs to it."""
        g = nx.DiGraph()
        g.add_nodes_from(range(self.dag.n))
        g.add_edges_from(self.oriented_arcs())
        reach = {u: nx.descendants(g, u) for u in g}
        for i, (u, v) in enumerate(self.dag.arcs):
            if v in reach[u] and not self.forward >> i & 1:
                return False
            if u in reach[v] and not self.backward >> i & 1:
                return False
        return True

    def is_forest(self) -> bool:
        g = nx.Graph()
        g.add_nodes_from(range(self.dag.n))
        g.add_edges_from(self.oriented_arcs())
        return nx.is_forest(g)


def partial_reorientation(c: Congruence, classes: Iterable[int]) -> PartialReorientation:
    """Arcs common to every reorientation of the given classes."""
    lat = c.ctx.lattice
    full = c.dag.full_arc_mask
    always_rev, never_rev = full, full
    for k in classes:
        for x in iter_bits(c.classes[k]):
            e = lat.elements[x]
            always_rev &= e
            never_rev &= ~e
    return PartialReorientation(c.dag, never_rev, always_rev)


def interval_partial_reorientation(c: Congruence, lo_class: int, hi_class: int) -> PartialReorientation:
    q = c.quotient
    if not q.leq(lo_class, hi_class):
        raise ValueError("not an interval of the quotient")
    members = [k for k in range(q.size) if q.leq(lo_class, k) and q.leq(k, hi_class)]
    return partial_reorientation(c, members)


def reduced_partial_reorientation(c: Congruence, classes: Iterable[int]) -> PartialReorientation:
    return partial_reorientation(c, classes).reduction()


def coherent_interval_check(d: Dag, p: PartialReorientation, down_dec: int, up_dec: int) -> bool:
    """Local test for ``p`` to come from an interval of the coherent quotient.

    ``p`` must be closed under transitivity along arcs of ``d`` (every set of
    arcs common to an interval is), otherwise the answer is False.  For each arc ``(x, y)`` of ``p`` and each ``w`` strictly inside the support
    of the underlying arc, ``p`` holds ``(x, w)`` or ``(w, y)``; it must hold
    ``(x, w)`` when ``w`` is not in ``down_dec`` and ``(w, y)`` when ``w`` is
    not in ``up_dec``.
    """
    _require_skeletal(d)
    if not p.is_acyclic() or not p.is_closed():
        return False
    oriented = set(p.oriented_arcs())
    for x, y in oriented:
        a = (x, y) if (x, y) in d.arc_index else (y, x)
        inner = transitive_support(d, a) & ~(1 << x | 1 << y)
        for w in iter_bits(inner):
            first, second = (x, w) in oriented, (w, y) in oriented
            if not (first or second):
                return False
            if not down_dec >> w & 1 and not first:
                return False
            if not up_dec >> w & 1 and not second:
                return False
    return True


# ------------------------------------------------------------------ extension and restriction


def extend_congruence(m: RestrictionMap, c_sub: Congruence) -> Congruence:
    """Congruence of the big graph whose classes are preimages of classes of ``c_sub``."""
    _require_skeletal(m.d)
    _require_skeletal(m.d_sub)
    if not is_pathful(m):
        raise NotPathful("the subgraph is not pathful")
    rs = rope_system(m.d)
    mask = 0
    for r in c_sub.ideal.ropes:
        mask |= 1 << rs.rope_index(r)
    return congruence_from_ideal(m.d, RopeIdeal(m.d, mask))


def restrict_congruence(m: RestrictionMap, c: Congruence) -> Congruence:
    """Congruence of the subgraph read on the lower interval isomorphic to it."""
    _require_skeletal(m.d)
    _require_skeletal(m.d_sub)
    if not is_strongly_pathful(m):
        raise NotStronglyPathful("the subgraph is not strongly pathful")
    sub = rope_system(m.d_sub)
    mask = 0
    for r in c.ideal.ropes:
        if (r.u, r.v) in m.d_sub.arc_index:
            mask |= 1 << sub.rope_index(r)
    return congruence_from_ideal(m.d_sub, RopeIdeal(m.d_sub, mask))


def extension_by_definition(m: RestrictionMap, c_sub: Congruence) -> tuple[int, ...]:
    """Class labels on the big lattice: E ≡ F iff their restrictions are ≡."""
    sub_index = c_sub.ctx.lattice.index
    labels = [c_sub.class_of[sub_index[restrict(m, e)]] for e in m.lattice.elements]
    return _canonical(labels)


def restriction_by_definition(m: RestrictionMap, c: Congruence) -> tuple[int, ...]:
    index = c.ctx.lattice.index
    labels = [c.class_of[index[lift(m, e)]] for e in m.sub_lattice.elements]
    return _canonical(labels)


def _canonical(labels: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


# ------------------------------------------------------------------ doubling


@dataclass(frozen=True)
class DoublingStep:
    """Adding ``arc`` to ``base`` doubles the convex set ``doubled`` (element-index bitset of AR(base))."""

    base: Dag
    arc: tuple[int, int]
    doubled: int
    is_convex: bool
    is_isomorphic: bool
    is_interval: bool
    interval_partition: bool | None


def doubling_sequence(d: Dag) -> list[DoublingStep]:
    """Arcs outside the transitive reduction, added by increasing support, with checks per step."""
    if not is_vertebrate(d):
        raise NotALattice(f"{d!r} is not vertebrate")
    from .dag import reduction_mask

    red = reduction_mask(d)
    extra = [i for i in range(d.m) if not red >> i & 1]
    extra.sort(key=lambda i: (transitive_support(d, d.arcs[i]).bit_count(), i))
    skeletal = is_skeletal(d)
    current = [d.arcs[i] for i in range(d.m) if red >> i & 1]
    steps = []
    for i in extra:
        base = Dag(d.n, tuple(sorted(current)))
        grown = Dag(d.n, tuple(sorted(current + [d.arcs[i]])))
        steps.append(_doubling_step(base, grown, d.arcs[i], d if skeletal else None))
        current.append(d.arcs[i])
    return steps


def _doubling_step(base: Dag, grown: Dag, arc: tuple[int, int], skeletal_graph: Dag | None) -> DoublingStep:
    lb, lg = ReorientationLattice(base), ReorientationLattice(grown)
    m = RestrictionMap(grown, base)
    a = grown.arc_index[arc]
    keep = rev = 0
    for e in lg.elements:
        x = lb.index[restrict(m, e)]
        if e >> a & 1:
            rev |= 1 << x
        else:
            keep |= 1 << x
    z = keep & rev
    p = lb.poset
    lower = all(p.down[x] & ~keep == 0 for x in iter_bits(keep))
    upper = all(p.up[x] & ~rev == 0 for x in iter_bits(rev))
    convex = lower and upper
    # doubled poset: elements (x, 0/1) for x in Z, x otherwise
    labels = []
    for x in range(p.size):
        if z >> x & 1:
            labels.extend([(x, 0), (x, 1)])
        else:
            labels.append((x, -1))
    pos = {lab: k for k, lab in enumerate(labels)}

    def leq(s, t) -> bool:
        (x, i), (y, j) = s, t
        if not p.leq(x, y):
            return False
        return not (i >= 0 and j >= 0 and i > j)

    doubled = FinitePoset.from_leq(labels, leq)
    image = []
    for e in lg.elements:
        x = lb.index[restrict(m, e)]
        image.append(pos[(x, (e >> a & 1) if z >> x & 1 else -1)])
    iso = len(set(image)) == len(image) == doubled.size and all(
        lg.poset.leq(s, t) == doubled.leq(image[s], image[t]) for s in range(len(image)) for t in range(len(image))
    )
    lo = [x for x in iter_bits(z) if p.down[x] & z == 1 << x]
    hi = [x for x in iter_bits(z) if p.up[x] & z == 1 << x]
    is_interval = z != 0 and len(lo) == 1 and len(hi) == 1 and p.up[lo[0]] & p.down[hi[0]] == z
    partition = None
    if skeletal_graph is not None:
        inner = transitive_support(skeletal_graph, arc)
        arcs_k = base.arcs_inside(inner)
        blocks: dict[int, int] = {}
        for x in iter_bits(z):
            blocks[lb.elements[x] & arcs_k] = blocks.get(lb.elements[x] & arcs_k, 0) | 1 << x
        partition = all(_is_interval(p, b) for b in blocks.values())
    return DoublingStep(base, arc, z, convex, iso, is_interval, partition)


def _is_interval(p: FinitePoset, s: int) -> bool:
    lo = [x for x in iter_bits(s) if p.down[x] & s == 1 << x]
    hi = [x for x in iter_bits(s) if p.up[x] & s == 1 << x]
    return len(lo) == 1 and len(hi) == 1 and p.up[lo[0]] & p.down[hi[0]] == s


# ------------------------------------------------------------------ Hamiltonicity


@dataclass(frozen=True)
class HamiltonResult:
    """``kind`` is "cycle", "path" or "none"; ``trivial`` marks graphs on at most two vertices."""

    kind: str
    witness: tuple[int, ...] | None
    trivial: bool = False


def hamiltonian_cycle(adj: Sequence[Sequence[int]], max_nodes: int = 50_000_000) -> list[int] | None:
    return kernels.hamiltonian_search([sorted(a) for a in adj], True, max_nodes)


def hamiltonian_path(adj: Sequence[Sequence[int]], max_nodes: int = 50_000_000) -> list[int] | None:
    return kernels.hamiltonian_search([sorted(a) for a in adj], False, max_nodes)


def hamiltonicity(adj: Sequence[Sequence[int]]) -> HamiltonResult:
    """Cycle if one exists, else a path, else none."""
    trivial = len(adj) <= 2
    cyc = hamiltonian_cycle(adj) if not trivial else None
    if cyc is not None:
        return HamiltonResult("cycle", tuple(cyc))
    path = hamiltonian_path(adj)
    if path is not None:
        return HamiltonResult("path", tuple(path), trivial)
    return HamiltonResult("none", None, trivial)


def is_cover_graph_regular(adj: Sequence[Sequence[int]]) -> bool:
    return len({len(a) for a in adj}) <= 1


# ------------------------------------------------------------------ conjecture harness


def _pattern(arcs: Sequence[tuple[int, int]]) -> Dag:
    return Dag(4, tuple(sorted((u - 1, v - 1) for u, v in arcs)))


# The three 4-vertex skeletal graphs on which the Tamari or Cambrian quotients
# first misbehave, found by ``minimal_obstructions`` over the corpus: two
# triangles sharing their first arc (TWO_SOURCES) or their last arc
# (TWO_SINKS) make the Tamari cover graph irregular; two triangles chained
# through a middle arc (CHAIN) make the Cambrian quotients differ in size.
CHAIN = _pattern([(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
TWO_SOURCES = _pattern([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)])
TWO_SINKS = _pattern([(1, 2), (1, 3), (2, 3), (4, 2), (4, 3)])
PATTERNS = (CHAIN, TWO_SOURCES, TWO_SINKS)
TAMARI_OBSTRUCTIONS = (TWO_SOURCES, TWO_SINKS)
CAMBRIAN_OBSTRUCTIONS = (CHAIN,)


def induced_subgraph(d: Dag, vertices: Sequence[int]) -> Dag:
    pos = {v: k for k, v in enumerate(vertices)}
    return Dag(len(pos), tuple(sorted((pos[u], pos[v]) for u, v in d.arcs if u in pos and v in pos)))


def minimal_obstructions(graphs: Iterable[Dag], good) -> list[Dag]:
    """Graphs failing ``good`` whose proper induced subgraphs all pass it."""
    from itertools import combinations

    out = []
    for d in graphs:
        if good(d):
            continue
        if all(good(induced_subgraph(d, vs)) for vs in combinations(range(d.n), d.n - 1)):
            out.append(d)
    return out


def has_induced_pattern(d: Dag, pattern: Dag) -> bool:
    g = nx.DiGraph(d.arcs)
    g.add_nodes_from(range(d.n))
    h = nx.DiGraph(pattern.arcs)
    h.add_nodes_from(range(pattern.n))
    matcher = nx.algorithms.isomorphism.DiGraphMatcher(g, h)
    return matcher.subgraph_is_isomorphic()


def cambrian_ideals(d: Dag) -> list[RopeIdeal]:
    """Distinct Cambrian ideals over all splittings of the vertex set."""
    seen: dict[int, RopeIdeal] = {}
    for down in range(1 << d.n):
        ideal = cambrian_ideal(d, down)
        seen.setdefault(ideal.members, ideal)
    return [seen[k] for k in sorted(seen)]


@dataclass
class GraphReport:
    """``patterns`` records induced copies of CHAIN, TWO_SOURCES, TWO_SINKS."""

    dag: Dag
    patterns: tuple[bool, bool, bool]
    tamari_regular: bool
    tamari_forests: bool
    cambrian_sizes: tuple[int, ...]
    cambrian_isomorphic: bool

    @property
    def cambrian_same_size(self) -> bool:
        return len(set(self.cambrian_sizes)) == 1

    @property
    def tamari_ok(self) -> bool:
        avoid = not (self.patterns[1] or self.patterns[2])
        return avoid == self.tamari_regular == self.tamari_forests

    @property
    def cambrian_ok(self) -> bool:
        avoid = not self.patterns[0]
        return avoid == self.cambrian_same_size == self.cambrian_isomorphic

    @property
    def shared_pattern_reading_ok(self) -> bool:
        """Tamari regularity against all three patterns at once."""
        return (not any(self.patterns)) == self.tamari_regular


def graph_report(d: Dag) -> GraphReport:
    _require_skeletal(d)
    ctx = context(d)
    tam = ctx.congruence(sylvester_ideal(d))
    adj = tam.quotient_cover_graph()
    forests = all(reduced_partial_reorientation(tam, [k]).is_forest() for k in range(len(tam)))
    cams = [ctx.congruence(i) for i in cambrian_ideals(d)]
    graphs = [_nx_graph(c.quotient_cover_graph()) for c in cams]
    iso = all(nx.is_isomorphic(graphs[0], g) for g in graphs[1:])
    return GraphReport(
        d,
        tuple(has_induced_pattern(d, p) for p in PATTERNS),  # type: ignore[arg-type]
        is_cover_graph_regular(adj),
        forests,
        tuple(len(c) for c in cams),
        iso,
    )


def _nx_graph(adj: Sequence[Sequence[int]]) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(len(adj)))
    g.add_edges_from((a, b) for a, nb in enumerate(adj) for b in nb if a < b)
    return g


@dataclass
class HarnessReport:
    graphs: list[GraphReport]

    @property
    def tamari_violations(self) -> list[Dag]:
        return [g.dag for g in self.graphs if not g.tamari_ok]

    @property
    def cambrian_violations(self) -> list[Dag]:
        return [g.dag for g in self.graphs if not g.cambrian_ok]

    @property
    def shared_pattern_counterexamples(self) -> list[Dag]:
        return [g.dag for g in self.graphs if not g.shared_pattern_reading_ok]

    @property
    def ok(self) -> bool:
        return not self.tamari_violations and not self.cambrian_violations

    def to_json_dict(self) -> dict:
        return {
            "graphs": len(self.graphs),
            "tamari_violations": [repr(d) for d in self.tamari_violations],
            "cambrian_violations": [repr(d) for d in self.cambrian_violations],
            "shared_pattern_counterexamples": [repr(d) for d in self.shared_pattern_counterexamples],
        }


def conjecture_harness(graphs: Iterable[Dag]) -> HarnessReport:
    return HarnessReport([graph_report(d) for d in graphs if is_skeletal(d)])


def bidiagrams_in_ideal(ideal: RopeIdeal) -> list[tuple[int, int]]:
    """Bidiagrams (as rope bitsets) all of whose ropes lie in the ideal."""
    m = ideal.members
    return [(a, b) for a, b in bidiagrams(ideal.dag) if not (a | b) & ~m]
