"""The poset of acyclic reorientations of a DAG, ordered by inclusion of reversed arcs.

Elements are reversed-arc bitsets (``int``).  ``Reorientation`` wraps a bitset
together with its graph for the public API; every function here also accepts a
bare bitset.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

import networkx as nx

from . import kernels
from .dag import Dag, is_filled, is_forest, is_skeletal, is_vertebrate, iter_bits
from .errors import NotACover, NotALattice, NotSemidistributive, SizeCapExceeded
from .poset import (
    FinitePoset,
    is_congruence_normal_oracle,
    is_congruence_uniform_oracle,
    is_distributive_oracle,
    is_semidistributive_oracle,
)

DEFAULT_CAP = 1_000_000


@dataclass(frozen=True)
class Reorientation:
    dag: Dag
    reversed: int

    def oriented_arcs(self) -> list[tuple[int, int]]:
        return [(v, u) if self.reversed >> i & 1 else (u, v) for i, (u, v) in enumerate(self.dag.arcs)]

    def is_acyclic(self) -> bool:
        return kernels.is_acyclic(self.dag.n, *_tails_heads(self.dag), self.reversed)

    def flippable(self) -> int:
        return flippable_arcs(self.dag, self.reversed)

    def reversed_arcs(self) -> list[tuple[int, int]]:
        return self.dag.arcs_of(self.reversed)

    def __repr__(self) -> str:
        body = ",".join(f"{u + 1}{v + 1}" for u, v in self.reversed_arcs())
        return f"rev{{{body}}}"


Element = Union[int, Reorientation]


def _mask(x: Element) -> int:
    return x.reversed if isinstance(x, Reorientation) else x


def _tails_heads(d: Dag) -> tuple[list[int], list[int]]:
    return [u for u, _ in d.arcs], [v for _, v in d.arcs]


def size_cap() -> int:
    raw = os.environ.get("REORILAT_MAX_ELEMENTS")
    return int(raw) if raw else DEFAULT_CAP


# ------------------------------------------------------------------ counting


def _block_count(nbr: list[int]) -> int:
    """Acyclic orientations of a small graph by inclusion-exclusion over source sets."""
    k = len(nbr)
    full = (1 << k) - 1
    indep = bytearray(1 << k)
    indep[0] = 1
    for t in range(1, full + 1):
        low = (t & -t).bit_length() - 1
        rest = t & (t - 1)
        indep[t] = 1 if indep[rest] and not nbr[low] & rest else 0
    a = [0] * (full + 1)
    a[0] = 1
    for s in range(1, full + 1):
        total = 0
        t = s
        while t:
            if indep[t]:
                if t.bit_count() & 1:
                    total += a[s ^ t]
                else:
                    total -= a[s ^ t]
            t = (t - 1) & s
        a[s] = total
    return a[full]


def count_acyclic_reorientations(d: Dag, max_block: int = 12) -> int | None:
    """Exact |AR(d)| as a product over biconnected blocks, or None if a block is too big."""
    g = nx.Graph()
    g.add_nodes_from(range(d.n))
    g.add_edges_from(d.arcs)
    total = 1
    for block in nx.biconnected_components(g):
        verts = sorted(block)
        if len(verts) > max_block:
            return None
        pos = {v: i for i, v in enumerate(verts)}
        nbr = [0] * len(verts)
        for u, v in g.subgraph(verts).edges:
            nbr[pos[u]] |= 1 << pos[v]
            nbr[pos[v]] |= 1 << pos[u]
        total *= _block_count(nbr)
    return total


# ------------------------------------------------------------------ the lattice


class ReorientationLattice:
    """All acyclic reorientations of ``d``, sorted by bitset value."""

    def __init__(self, d: Dag, cap: int | None = None) -> None:
        cap = size_cap() if cap is None else cap
        predicted = count_acyclic_reorientations(d)
        if predicted is not None and predicted > cap:
            raise SizeCapExceeded(predicted, cap)
        tails, heads = _tails_heads(d)
        elements = kernels.acyclic_reorientations(d.n, tails, heads, cap)
        if elements is None:
            raise SizeCapExceeded(cap + 1, cap)
        self.dag = d
        self.elements: list[int] = elements
        self.index: dict[int, int] = {e: i for i, e in enumerate(elements)}

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def poset(self) -> FinitePoset:
        return FinitePoset.from_subsets(self.elements)

    def reorientation(self, i: int) -> Reorientation:
        return Reorientation(self.dag, self.elements[i])

    @cached_property
    def flippable(self) -> list[int]:
        tails, heads = _tails_heads(self.dag)
        return [kernels.flippable_mask(self.dag.n, tails, heads, e) for e in self.elements]

    def cover_adjacency(self) -> list[list[int]]:
        """Flip graph: neighbours differ by one flippable arc."""
        out = []
        for e, f in zip(self.elements, self.flippable):
            out.append(sorted(self.index[e ^ (1 << i)] for i in iter_bits(f)))
        return out

    def parity_split(self) -> tuple[int, int]:
        even = sum(1 for e in self.elements if e.bit_count() % 2 == 0)
        return even, len(self.elements) - even

    def is_self_dual(self) -> bool:
        """Reversing every arc maps the element set to itself."""
        full = self.dag.full_arc_mask
        return all((full ^ e) in self.index for e in self.elements)

    def join_irreducible_indices(self) -> list[int]:
        return [i for i, (e, f) in enumerate(zip(self.elements, self.flippable)) if (e & f).bit_count() == 1]

    def meet_irreducible_indices(self) -> list[int]:
        full = self.dag.full_arc_mask
        return [
            i for i, (e, f) in enumerate(zip(self.elements, self.flippable)) if (~e & full & f).bit_count() == 1
        ]

    def property_oracles(self) -> dict[str, bool]:
        """Definition-level checks on the explicit lattice."""
        p = self.poset
        if not p.is_lattice():
            raise NotALattice(f"{self.dag!r} is not vertebrate")
        return {
            "distributive": is_distributive_oracle(p),
            "semidistributive": is_semidistributive_oracle(p),
            "congruence_normal": is_congruence_normal_oracle(p),
            "congruence_uniform": is_congruence_uniform_oracle(p),
        }

    def to_json_dict(self) -> dict:
        return {
            "graph": {"n": self.dag.n, "arcs": [[u + 1, v + 1] for u, v in self.dag.arcs]},
            "elements": [list(iter_bits(e)) for e in self.elements],
            "covers": [list(c) for c in self.poset.covers],
        }

    def to_dot(self, name: str = "AR") -> str:
        d = self.dag

        def label(e: int) -> str:
            parts = []
            for i, (u, v) in enumerate(d.arcs):
                if e >> i & 1:
                    parts.append(f'<font color="red">{v + 1}&rarr;{u + 1}</font>')
                else:
                    parts.append(f'<font color="darkgreen">{u + 1}&rarr;{v + 1}</font>')
            return "<" + " ".join(parts) + ">"

        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
        for i, e in enumerate(self.elements):
            lines.append(f"  n{i} [label={label(e)}];")
        for i, j in self.poset.covers:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def enumerate_reorientations(d: Dag, cap: int | None = None) -> ReorientationLattice:
    return ReorientationLattice(d, cap)


# ------------------------------------------------------------------ closure-based operations


def closure_mask(d: Dag, b: int) -> int:
    """Arcs of ``d`` lying in the transitive closure of the arc set ``b``."""
    out = [0] * d.n
    for i in iter_bits(b):
        u, v = d.arcs[i]
        out[u] |= 1 << v
    reach = [0] * d.n
    for u in reversed(d.topological_order):
        acc = 0
        for v in iter_bits(out[u]):
            acc |= (1 << v) | reach[v]
        reach[u] = acc
    result = 0
    for i, (u, v) in enumerate(d.arcs):
        if reach[u] >> v & 1:
            result |= 1 << i
    return result


def is_closed(d: Dag, b: int) -> bool:
    return closure_mask(d, b) == b


def is_biclosed(d: Dag, b: Element) -> bool:
    b = _mask(b)
    return is_closed(d, b) and is_closed(d, d.full_arc_mask & ~b)


def is_acyclic_reorientation(d: Dag, b: Element) -> bool:
    return kernels.is_acyclic(d.n, *_tails_heads(d), _mask(b))


def flippable_arcs(d: Dag, e: Element) -> int:
    return kernels.flippable_mask(d.n, *_tails_heads(d), _mask(e))


def _require_lattice(d: Dag) -> None:
    if not is_vertebrate(d):
        raise NotALattice(f"{d!r} is not vertebrate, so its reorientations do not form a lattice")


def _require_semidistributive(d: Dag) -> None:
    if not is_skeletal(d):
        raise NotSemidistributive(f"{d!r} is not skeletal")


def join(d: Dag, es: Iterable[Element]) -> int:
    _require_lattice(d)
    acc = 0
    for e in es:
        acc |= _mask(e)
    return closure_mask(d, acc)


def meet(d: Dag, es: Iterable[Element]) -> int:
    _require_lattice(d)
    full = d.full_arc_mask
    acc = 0
    for e in es:
        acc |= full & ~_mask(e)
    return full & ~closure_mask(d, acc)


def join_irreducibles(d: Dag) -> list[int]:
    _require_lattice(d)
    lat = ReorientationLattice(d)
    return [lat.elements[i] for i in lat.join_irreducible_indices()]


def meet_irreducibles(d: Dag) -> list[int]:
    _require_lattice(d)
    lat = ReorientationLattice(d)
    return [lat.elements[i] for i in lat.meet_irreducible_indices()]


def forced_arcs(d: Dag, y: int, a: int) -> int:
    """Arcs reversed in ``y`` that are the only reversed arc on some directed
    path of ``d`` joining the endpoints of arc ``a``."""
    s, t = d.arcs[a]
    unrev = d.full_arc_mask & ~y
    out = [0] * d.n
    for i in iter_bits(unrev):
        u, v = d.arcs[i]
        out[u] |= 1 << v
    reach = [0] * d.n
    for u in reversed(d.topological_order):
        acc = 1 << u
        for v in iter_bits(out[u]):
            acc |= reach[v]
        reach[u] = acc  # reflexive
    from_s = reach[s]
    result = 0
    for i in iter_bits(y):
        p, q = d.arcs[i]
        if from_s >> p & 1 and reach[q] >> t & 1:
            result |= 1 << i
    return result


def _check_cover(d: Dag, x: int, y: int) -> int:
    diff = x ^ y
    if x & ~y or diff.bit_count() != 1:
        raise NotACover("the second reorientation must reverse exactly one more arc")
    if not (is_acyclic_reorientation(d, x) and is_acyclic_reorientation(d, y)):
        raise NotACover("both reorientations must be acyclic")
    return diff.bit_length() - 1


def k_join(d: Dag, x: Element, y: Element) -> int:
    """Least z with x ∨ z = y, for a cover x ⋖ y."""
    _require_semidistributive(d)
    x, y = _mask(x), _mask(y)
    a = _check_cover(d, x, y)
    return forced_arcs(d, y, a)


def k_meet(d: Dag, x: Element, y: Element) -> int:
    """Greatest z with y ∧ z = x, via the arc-reversal anti-automorphism."""
    full = d.full_arc_mask
    return full ^ k_join(d, full ^ _mask(y), full ^ _mask(x))


def canonical_join_representation(d: Dag, e: Element) -> list[int]:
    _require_semidistributive(d)
    e = _mask(e)
    if not is_acyclic_reorientation(d, e):
        raise ValueError("reorientation is not acyclic")
    red = flippable_arcs(d, e) & e
    return [forced_arcs(d, e, a) for a in iter_bits(red)]


def canonical_meet_representation(d: Dag, e: Element) -> list[int]:
    full = d.full_arc_mask
    return [full ^ j for j in canonical_join_representation(d, full ^ _mask(e))]


# ------------------------------------------------------------------ structural predicates


def is_lattice(d: Dag) -> bool:
    return is_vertebrate(d)


def is_distributive(d: Dag) -> bool:
    _require_lattice(d)
    return is_forest(d)


def is_semidistributive(d: Dag) -> bool:
    _require_lattice(d)
    return is_filled(d)


def is_congruence_normal(d: Dag) -> bool:
    _require_lattice(d)
    return True


def is_congruence_uniform(d: Dag) -> bool:
    _require_lattice(d)
    return is_filled(d)


def structural_properties(d: Dag) -> dict[str, bool]:
    return {
        "distributive": is_distributive(d),
        "semidistributive": is_semidistributive(d),
        "congruence_normal": is_congruence_normal(d),
        "congruence_uniform": is_congruence_uniform(d),
    }
