"""Finite posets stored as up-set bitsets, plus definition-level lattice oracles.

Everything here is generic: it knows nothing about graphs.  The reorientation
lattice, its quotients and the subrope order are all ``FinitePoset`` instances,
and the oracles below are the brute-force references that the structural
characterizations are tested against.
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .dag import iter_bits
from .errors import NotALattice


class FinitePoset:
    """Elements ``0..size-1``; ``up[i]`` is the bitset of all ``j >= i``."""

    def __init__(self, up: Sequence[int], labels: Sequence[object] | None = None) -> None:
        self.up: tuple[int, ...] = tuple(up)
        self.size = len(self.up)
        self.labels = list(labels) if labels is not None else list(range(self.size))
        for i, u in enumerate(self.up):
            if not u >> i & 1:
                raise ValueError("up-sets must be reflexive")

    @classmethod
    def from_leq(cls, elements: Sequence[object], leq: Callable[[object, object], bool]) -> FinitePoset:
        up = []
        for x in elements:
            mask = 0
            for j, y in enumerate(elements):
                if leq(x, y):
                    mask |= 1 << j
            up.append(mask)
        return cls(up, elements)

    @classmethod
    def from_subsets(cls, masks: Sequence[int], labels: Sequence[object] | None = None) -> FinitePoset:
        """Inclusion order on a family of bitsets."""
        by_size: dict[int, list[int]] = {}
        for j, m in enumerate(masks):
            by_size.setdefault(m.bit_count(), []).append(j)
        sizes = sorted(by_size)
        up = []
        for i, x in enumerate(masks):
            k = x.bit_count()
            acc = 0
            for s in sizes:
                if s < k:
                    continue
                for j in by_size[s]:
                    if masks[j] & x == x:
                        acc |= 1 << j
            up.append(acc)
        return cls(up, list(labels) if labels is not None else list(masks))

    # -------------------------------------------------------------- structure

    @cached_property
    def down(self) -> tuple[int, ...]:
        down = [0] * self.size
        for i, u in enumerate(self.up):
            for j in iter_bits(u):
                down[j] |= 1 << i
        return tuple(down)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for i in range(self.size):
            strict = self.up[i] & ~(1 << i)
            above = 0
            for j in iter_bits(strict):
                above |= self.up[j] & ~(1 << j)
            out.append(tuple(iter_bits(strict & ~above)))
        return tuple(out)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.size)]
        for i, ups in enumerate(self.upper_covers):
            for j in ups:
                out[j].append(i)
        return tuple(tuple(x) for x in out)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i in range(self.size) for j in self.upper_covers[i])

    def hasse_adjacency(self) -> list[list[int]]:
        """Undirected cover graph as sorted neighbour lists."""
        adj: list[set[int]] = [set() for _ in range(self.size)]
        for i, j in self.covers:
            adj[i].add(j)
            adj[j].add(i)
        return [sorted(a) for a in adj]

    @cached_property
    def _up_index(self) -> dict[int, int]:
        return {u: i for i, u in enumerate(self.up)}

    @cached_property
    def _down_index(self) -> dict[int, int]:
        return {d: i for i, d in enumerate(self.down)}

    def lub(self, i: int, j: int) -> int | None:
        """Least upper bound, or None when the upper bounds have no minimum."""
        return self._up_index.get(self.up[i] & self.up[j])

    def glb(self, i: int, j: int) -> int | None:
        return self._down_index.get(self.down[i] & self.down[j])

    def is_lattice(self) -> bool:
        if self.size == 0:
            return False
        for i in range(self.size):
            for j in range(i + 1, self.size):
                if self.lub(i, j) is None:
                    return False
        # a finite join-semilattice with a bottom is a lattice
        return self.glb_all(range(self.size)) is not None

    def glb_all(self, items: Iterable[int]) -> int | None:
        acc = (1 << self.size) - 1
        for i in items:
            acc &= self.down[i]
        return self._down_index.get(acc)

    def lub_all(self, items: Iterable[int]) -> int | None:
        acc = (1 << self.size) - 1
        for i in items:
            acc &= self.up[i]
        return self._up_index.get(acc)

    @cached_property
    def join_table(self) -> list[list[int]]:
        table = [[0] * self.size for _ in range(self.size)]
        for i in range(self.size):
            for j in range(i, self.size):
                k = self.lub(i, j)
                if k is None:
                    raise NotALattice(f"elements {i} and {j} have no least upper bound")
                table[i][j] = table[j][i] = k
        return table

    @cached_property
    def meet_table(self) -> list[list[int]]:
        table = [[0] * self.size for _ in range(self.size)]
        for i in range(self.size):
            for j in range(i, self.size):
                k = self.glb(i, j)
                if k is None:
                    raise NotALattice(f"elements {i} and {j} have no greatest lower bound")
                table[i][j] = table[j][i] = k
        return table

    @cached_property
    def bottom(self) -> int:
        b = self.glb_all(range(self.size))
        if b is None:
            raise NotALattice("no bottom element")
        return b

    @cached_property
    def top(self) -> int:
        t = self.lub_all(range(self.size))
        if t is None:
            raise NotALattice("no top element")
        return t

    def join_irreducibles(self) -> list[int]:
        return [i for i in range(self.size) if len(self.lower_covers[i]) == 1]

    def meet_irreducibles(self) -> list[int]:
        return [i for i in range(self.size) if len(self.upper_covers[i]) == 1]

    def interval_count(self) -> int:
        return sum(u.bit_count() for u in self.up)

    def intervals(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.size) for j in iter_bits(self.up[i])]

    def induced(self, members: Sequence[int]) -> FinitePoset:
        """Subposet on the given elements, reindexed in the given order."""
        pos = {x: k for k, x in enumerate(members)}
        up = []
        for x in members:
            mask = 0
            for y in iter_bits(self.up[x]):
                k = pos.get(y)
                if k is not None:
                    mask |= 1 << k
            up.append(mask)
        return FinitePoset(up, [self.labels[x] for x in members])

    # -------------------------------------------------------------- export

    def to_json(self, label: Callable[[object], object] | None = None) -> str:
        fmt = label or (lambda x: x)
        return json.dumps(
            {"elements": [fmt(x) for x in self.labels], "covers": [list(c) for c in self.covers]}
        )

    def to_dot(self, label: Callable[[object], str] | None = None, name: str = "P") -> str:
        fmt = label or str
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, x in enumerate(self.labels):
            lines.append(f"  n{i} [label={fmt(x)}];")
        for i, j in self.covers:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ oracles


def is_distributive_oracle(p: FinitePoset) -> bool:
    """x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z) for all triples."""
    J, M = p.join_table, p.meet_table
    n = p.size
    for x in range(n):
        Mx = M[x]
        for y in range(n):
            Jy = J[y]
            for z in range(y + 1, n):
                if Mx[Jy[z]] != J[Mx[y]][Mx[z]]:
                    return False
    return True


def _has_min_kjoin(p: FinitePoset, x: int, y: int) -> bool:
    J, M = p.join_table, p.meet_table
    members = [z for z in range(p.size) if J[x][z] == y]
    acc = members[0]
    for z in members[1:]:
        acc = M[acc][z]
    return J[x][acc] == y


def _has_max_kmeet(p: FinitePoset, x: int, y: int) -> bool:
    J, M = p.join_table, p.meet_table
    members = [z for z in range(p.size) if M[y][z] == x]
    acc = members[0]
    for z in members[1:]:
        acc = J[acc][z]
    return M[y][acc] == x


def k_join_oracle(p: FinitePoset, x: int, y: int) -> int | None:
    """Minimum of {z : x ∨ z = y} for a cover x ⋖ y, or None if there is none."""
    J = p.join_table
    members = [z for z in range(p.size) if J[x][z] == y]
    minima = [z for z in members if not any(w != z and p.leq(w, z) for w in members)]
    return minima[0] if len(minima) == 1 else None


def is_semidistributive_oracle(p: FinitePoset) -> bool:
    """Every cover has a least element in K∨ and a greatest in K∧."""
    for x, y in p.covers:
        if not _has_min_kjoin(p, x, y) or not _has_max_kmeet(p, x, y):
            return False
    return True


def generate_congruence(p: FinitePoset, pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Smallest lattice congruence identifying the given pairs, as canonical class labels."""
    J, M = p.join_table, p.meet_table
    parent = list(range(p.size))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    work: list[tuple[int, int]] = []

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            work.append((a, b))

    for a, b in pairs:
        union(a, b)
    while work:
        a, b = work.pop()
        Ja, Jb, Ma, Mb = J[a], J[b], M[a], M[b]
        for z in range(p.size):
            union(Ja[z], Jb[z])
            union(Ma[z], Mb[z])
    return canonical_partition([find(i) for i in range(p.size)])


def canonical_partition(labels: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


def _con_join_irreducibles(p: FinitePoset) -> dict[int, tuple[int, ...]]:
    return {j: generate_congruence(p, [(p.lower_covers[j][0], j)]) for j in p.join_irreducibles()}


def _con_meet_irreducibles(p: FinitePoset) -> dict[int, tuple[int, ...]]:
    return {m: generate_congruence(p, [(m, p.upper_covers[m][0])]) for m in p.meet_irreducibles()}


def is_congruence_normal_oracle(p: FinitePoset) -> bool:
    """No join-irreducible j below a meet-irreducible m with con(j_*, j) = con(m, m^*)."""
    cj = _con_join_irreducibles(p)
    cm = _con_meet_irreducibles(p)
    for j, conj in cj.items():
        for m, conm in cm.items():
            if p.leq(j, m) and conj == conm:
                return False
    return True


def is_congruence_uniform_oracle(p: FinitePoset) -> bool:
    """j ↦ con(j_*, j) and m ↦ con(m, m^*) are both injective."""
    cj = _con_join_irreducibles(p)
    cm = _con_meet_irreducibles(p)
    return len(set(cj.values())) == len(cj) and len(set(cm.values())) == len(cm)


def all_congruences(p: FinitePoset) -> set[tuple[int, ...]]:
    """Every lattice congruence, as the closure of the join-irreducible congruences under joins."""
    base = list(dict.fromkeys(_con_join_irreducibles(p).values()))
    trivial = canonical_partition(range(p.size))
    found = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for c in frontier:
            for b in base:
                joined = _join_partitions(p, c, b)
                if joined not in found:
                    found.add(joined)
                    nxt.append(joined)
        frontier = nxt
    return found


def _join_partitions(p: FinitePoset, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    pairs = []
    for part in (a, b):
        first: dict[int, int] = {}
        for i, c in enumerate(part):
            if c in first:
                pairs.append((first[c], i))
            else:
                first[c] = i
    return generate_congruence(p, pairs)


def respects_operations(p: FinitePoset, labels: Sequence[int]) -> bool:
    """Does the partition given by ``labels`` respect ∨ and ∧?"""
    J, M = p.join_table, p.meet_table
    n = p.size
    seen_j: dict[tuple[int, int], int] = {}
    seen_m: dict[tuple[int, int], int] = {}
    for x in range(n):
        for y in range(n):
            key = (labels[x], labels[y])
            if seen_j.setdefault(key, labels[J[x][y]]) != labels[J[x][y]]:
                return False
            if seen_m.setdefault(key, labels[M[x][y]]) != labels[M[x][y]]:
                return False
    return True
