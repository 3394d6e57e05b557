"""Ropes of a skeletal DAG and the combinatorics built on them.

A rope ``(u, v, down, up)`` splits the interior of the transitive support of
an arc ``(u, v)`` into two parts.  Ropes index the join irreducibles (and the
meet irreducibles) of the reorientation lattice; sets of pairwise non-crossing
ropes index its elements; pairs of such sets linked by arrows index its
intervals.

Ropes of a fixed graph are interned by ``RopeSystem`` with dense indices, so
that diagrams and ideals are plain bitsets over rope indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .dag import Dag, is_skeletal, iter_bits, mask_of, transitive_support
from .errors import CrossingRopes, GraphFormatError, NotAnInterval, NotJoinIrreducible, NotSkeletal
from .lattice import Element, _mask, flippable_arcs, is_acyclic_reorientation, join, meet
from .poset import FinitePoset


@dataclass(frozen=True, order=False)
class Rope:
    """``down`` and ``up`` are vertex bitsets; vertices are 0-based."""

    u: int
    v: int
    down: int
    up: int

    @property
    def ends(self) -> int:
        return 1 << self.u | 1 << self.v

    @property
    def support(self) -> int:
        return self.ends | self.down | self.up

    def to_text(self) -> str:
        down = " ".join(str(w + 1) for w in iter_bits(self.down))
        up = " ".join(str(w + 1) for w in iter_bits(self.up))
        return f"{self.u + 1} {self.v + 1} | {down} | {up}".replace("|  |", "| |").rstrip()

    def to_dict(self) -> dict:
        return {
            "u": self.u + 1,
            "v": self.v + 1,
            "down": [w + 1 for w in iter_bits(self.down)],
            "up": [w + 1 for w in iter_bits(self.up)],
        }

    def __repr__(self) -> str:
        def fmt(mask: int) -> str:
            return "{" + ",".join(str(w + 1) for w in iter_bits(mask)) + "}"

        return f"Rope({self.u + 1},{self.v + 1},{fmt(self.down)},{fmt(self.up)})"


def parse_rope(text: str) -> Rope:
    """Inverse of ``Rope.to_text`` (1-based labels)."""
    parts = text.split("|")
    if len(parts) == 1:
        parts += ["", ""]
    if len(parts) != 3:
        raise GraphFormatError(f"malformed rope {text!r}: expected 'u v | down | up'")
    try:
        ends = [int(x) - 1 for x in parts[0].split()]
        down = [int(x) - 1 for x in parts[1].split()]
        up = [int(x) - 1 for x in parts[2].split()]
    except ValueError as exc:
        raise GraphFormatError(f"malformed rope {text!r}") from exc
    if len(ends) != 2 or min(ends + down + up, default=0) < 0:
        raise GraphFormatError(f"malformed rope {text!r}")
    return Rope(ends[0], ends[1], mask_of(down), mask_of(up))


def rope_from_dict(obj: dict) -> Rope:
    return Rope(obj["u"] - 1, obj["v"] - 1, mask_of(w - 1 for w in obj["down"]), mask_of(w - 1 for w in obj["up"]))


def _require_skeletal(d: Dag) -> None:
    if not is_skeletal(d):
        raise NotSkeletal(f"{d!r} is not skeletal")


# ------------------------------------------------------------------ the rope system


class RopeSystem:
    """All ropes of a skeletal graph, ordered by (arc index, down bitset)."""

    def __init__(self, d: Dag) -> None:
        _require_skeletal(d)
        self.dag = d
        ropes: list[Rope] = []
        for u, v in d.arcs:
            inner = transitive_support(d, (u, v)) & ~(1 << u | 1 << v)
            for down in _submasks_ascending(inner):
                ropes.append(Rope(u, v, down, inner & ~down))
        self.ropes: tuple[Rope, ...] = tuple(ropes)
        self.index: dict[Rope, int] = {r: i for i, r in enumerate(ropes)}

    def __len__(self) -> int:
        return len(self.ropes)

    def __iter__(self):
        return iter(self.ropes)

    def rope_index(self, r: Rope) -> int:
        try:
            return self.index[r]
        except KeyError:
            raise ValueError(f"{r!r} is not a rope of {self.dag!r}") from None

    @cached_property
    def crossing_matrix(self) -> tuple[int, ...]:
        rows = [0] * len(self.ropes)
        for i, r in enumerate(self.ropes):
            for j in range(i + 1, len(self.ropes)):
                if crossing(r, self.ropes[j]):
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def below(self) -> tuple[int, ...]:
        """``below[i]``: bitset of the subropes of rope ``i`` (reflexive)."""
        out = []
        for r in self.ropes:
            out.append(mask_of(j for j, s in enumerate(self.ropes) if is_subrope(s, r)))
        return tuple(out)

    @cached_property
    def above(self) -> tuple[int, ...]:
        out = [0] * len(self.ropes)
        for i, b in enumerate(self.below):
            for j in iter_bits(b):
                out[j] |= 1 << i
        return tuple(out)

    @cached_property
    def subrope_poset(self) -> FinitePoset:
        return FinitePoset(self.above, list(self.ropes))

    def is_noncrossing(self, mask: int) -> bool:
        rows = self.crossing_matrix
        return all(not rows[i] & mask for i in iter_bits(mask))

    def mask(self, ropes: Iterable[Rope]) -> int:
        return mask_of(self.rope_index(r) for r in ropes)

    def ropes_of(self, mask: int) -> list[Rope]:
        return [self.ropes[i] for i in iter_bits(mask)]

    def noncrossing_diagrams(self) -> list[int]:
        """Every non-crossing subset of ropes, as bitsets."""
        rows = self.crossing_matrix
        out: list[int] = []

        def extend(current: int, allowed: int) -> None:
            out.append(current)
            for i in iter_bits(allowed):
                rest = allowed & ~((1 << (i + 1)) - 1) & ~rows[i]
                extend(current | 1 << i, rest)

        extend(0, (1 << len(self.ropes)) - 1)
        return out


def _submasks_ascending(mask: int) -> list[int]:
    subs = []
    s = mask
    while True:
        subs.append(s)
        if s == 0:
            break
        s = (s - 1) & mask
    return subs[::-1]


@lru_cache(maxsize=256)
def rope_system(d: Dag) -> RopeSystem:
    return RopeSystem(d)


def all_ropes(d: Dag) -> list[Rope]:
    return list(rope_system(d).ropes)


def rope_count_formula(d: Dag) -> int:
    """Sum over arcs of 2^(|ts(arc)| - 2)."""
    return sum(1 << (transitive_support(d, a).bit_count() - 2) for a in d.arcs)


# ------------------------------------------------------------------ ropes and irreducibles


def rope_at(d: Dag, e: Element, arc: int) -> Rope:
    """The rope read off ``e`` at arc number ``arc`` of ``d``.

    A vertex ``w`` strictly inside the support of ``(u, v)`` goes down when
    ``(u, w)`` is reversed but ``(w, v)`` is not, and up in the mirror case.
    """
    e = _mask(e)
    u, v = d.arcs[arc]
    idx = d.arc_index
    down = up = 0
    for w in iter_bits(transitive_support(d, (u, v)) & ~(1 << u | 1 << v)):
        first = e >> idx[(u, w)] & 1
        second = e >> idx[(w, v)] & 1
        if first and not second:
            down |= 1 << w
        elif second and not first:
            up |= 1 << w
    return Rope(u, v, down, up)


def _arc_of(d: Dag, r: Rope) -> int:
    try:
        return d.arc_index[(r.u, r.v)]
    except KeyError:
        raise ValueError(f"{r!r} does not sit on an arc of {d!r}") from None


def irreducible_of_rope(d: Dag, r: Rope) -> int:
    """Join irreducible of a rope: reverse (w, w') with w in up+u and w' in down+v."""
    _require_skeletal(d)
    rope_system(d).rope_index(r)
    src = r.up | 1 << r.u
    dst = r.down | 1 << r.v
    return mask_of(i for i, (w, x) in enumerate(d.arcs) if src >> w & 1 and dst >> x & 1)


def meet_irreducible_of_rope(d: Dag, r: Rope) -> int:
    """Meet irreducible of a rope: keep (w, w') with w in down+u and w' in up+v."""
    _require_skeletal(d)
    rope_system(d).rope_index(r)
    src = r.down | 1 << r.u
    dst = r.up | 1 << r.v
    return d.full_arc_mask & ~mask_of(i for i, (w, x) in enumerate(d.arcs) if src >> w & 1 and dst >> x & 1)


def rope_of_join_irreducible(d: Dag, j: Element) -> Rope:
    _require_skeletal(d)
    j = _mask(j)
    if not is_acyclic_reorientation(d, j):
        raise NotJoinIrreducible("not an acyclic reorientation")
    red = flippable_arcs(d, j) & j
    if red.bit_count() != 1:
        raise NotJoinIrreducible(f"{red.bit_count()} reversed arcs in the transitive reduction, expected 1")
    return rope_at(d, j, red.bit_length() - 1)


def rope_of_meet_irreducible(d: Dag, m: Element) -> Rope:
    _require_skeletal(d)
    m = _mask(m)
    if not is_acyclic_reorientation(d, m):
        raise NotJoinIrreducible("not an acyclic reorientation")
    red = flippable_arcs(d, m) & ~m
    if red.bit_count() != 1:
        raise NotJoinIrreducible(f"{red.bit_count()} unreversed arcs in the transitive reduction, expected 1")
    return rope_at(d, m, red.bit_length() - 1)


# ------------------------------------------------------------------ crossing and diagrams


def crossing(r1: Rope, r2: Rope) -> bool:
    """Whether two distinct ropes cross.

    Two ropes cross when some ``w`` lies on the down side of the first and
    the up side of the second while some other ``w'`` does the opposite,
    endpoints counting on both sides.  A rope is not compared with itself:
    taken literally the condition holds for ``r1 == r2`` (use ``u`` and
    ``v``), but diagrams are sets, so the question never arises.
    """
    if r1 == r2:
        return False
    a = (r1.down | r1.ends) & (r2.up | r2.ends)
    b = (r1.up | r1.ends) & (r2.down | r2.ends)
    if not a or not b:
        return False
    return not (a == b and a.bit_count() == 1)


@dataclass(frozen=True)
class RopeDiagram:
    ropes: tuple[Rope, ...]

    def to_text(self) -> str:
        return "\n".join(r.to_text() for r in self.ropes)

    def to_json(self) -> str:
        return json.dumps([r.to_dict() for r in self.ropes])

    def __len__(self) -> int:
        return len(self.ropes)

    def __iter__(self):
        return iter(self.ropes)


def make_diagram(d: Dag, ropes: Iterable[Rope]) -> RopeDiagram:
    """Sorted, validated diagram; raises ``CrossingRopes``."""
    rs = rope_system(d)
    mask = rs.mask(ropes)
    if not rs.is_noncrossing(mask):
        raise CrossingRopes("the diagram contains crossing ropes")
    return RopeDiagram(tuple(rs.ropes_of(mask)))


def parse_diagram(text: str) -> list[Rope]:
    return [parse_rope(line) for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]


def diagram_of(d: Dag, e: Element) -> RopeDiagram:
    """Ropes at the reversed arcs of the transitive reduction of ``e``."""
    _require_skeletal(d)
    e = _mask(e)
    rs = rope_system(d)
    red = flippable_arcs(d, e) & e
    return RopeDiagram(tuple(sorted((rope_at(d, e, a) for a in iter_bits(red)), key=rs.rope_index)))


def meet_diagram_of(d: Dag, e: Element) -> RopeDiagram:
    _require_skeletal(d)
    e = _mask(e)
    rs = rope_system(d)
    red = flippable_arcs(d, e) & ~e
    return RopeDiagram(tuple(sorted((rope_at(d, e, a) for a in iter_bits(red)), key=rs.rope_index)))


def reorientation_of(d: Dag, diagram: Iterable[Rope]) -> int:
    ropes = list(diagram)
    make_diagram(d, ropes)
    return join(d, [irreducible_of_rope(d, r) for r in ropes])


def meet_reorientation_of(d: Dag, diagram: Iterable[Rope]) -> int:
    ropes = list(diagram)
    make_diagram(d, ropes)
    if not ropes:
        return d.full_arc_mask
    return meet(d, [meet_irreducible_of_rope(d, r) for r in ropes])


# ------------------------------------------------------------------ subropes


def is_subrope(r1: Rope, r2: Rope) -> bool:
    """``r1`` sits inside ``r2`` and agrees with it on every shared interior vertex."""
    return r1.ends & ~r2.support == 0 and r1.down & ~r2.down == 0 and r1.up & ~r2.up == 0


def subrope_poset(d: Dag) -> FinitePoset:
    return rope_system(d).subrope_poset


# ------------------------------------------------------------------ bidiagrams


def arrow(d: Dag, r_join: Rope, r_meet: Rope) -> bool:
    """Whether the join irreducible of ``r_join`` lies below the meet irreducible of ``r_meet``.

    Checked without building either reorientation: no arc ``(w, w')`` of ``d``
    may be reversed by the first and kept by the second.
    """
    src = (r_join.up | 1 << r_join.u) & (r_meet.down | 1 << r_meet.u)
    dst = (r_join.down | 1 << r_join.v) & (r_meet.up | 1 << r_meet.v)
    if not src or not dst:
        return True
    return not any(src >> w & 1 and dst >> x & 1 for w, x in d.arcs)


@dataclass(frozen=True)
class Bidiagram:
    join_side: RopeDiagram
    meet_side: RopeDiagram


def is_bidiagram(d: Dag, join_side: Sequence[Rope], meet_side: Sequence[Rope]) -> bool:
    rs = rope_system(d)
    if not (rs.is_noncrossing(rs.mask(join_side)) and rs.is_noncrossing(rs.mask(meet_side))):
        return False
    return all(arrow(d, a, b) for a in join_side for b in meet_side)


def interval_to_bidiagram(d: Dag, lo: Element, hi: Element) -> Bidiagram:
    lo, hi = _mask(lo), _mask(hi)
    if lo & ~hi:
        raise NotAnInterval("the lower reorientation is not below the upper one")
    return Bidiagram(diagram_of(d, lo), meet_diagram_of(d, hi))


def bidiagram_to_interval(d: Dag, b: Bidiagram) -> tuple[int, int]:
    lo = reorientation_of(d, b.join_side)
    hi = meet_reorientation_of(d, b.meet_side)
    if lo & ~hi:
        raise NotAnInterval("some join-side rope has no arrow to some meet-side rope")
    return lo, hi


def bidiagrams(d: Dag) -> list[tuple[int, int]]:
    """All bidiagrams as pairs of rope bitsets (join side, meet side)."""
    rs = rope_system(d)
    diagrams = rs.noncrossing_diagrams()
    n = len(rs.ropes)
    # ok[i]: meet-side ropes that every arrow from rope i allows
    ok = [mask_of(j for j in range(n) if arrow(d, rs.ropes[i], rs.ropes[j])) for i in range(n)]
    out = []
    for a in diagrams:
        allowed = (1 << n) - 1
        for i in iter_bits(a):
            allowed &= ok[i]
        out.extend((a, b) for b in diagrams if b & ~allowed == 0)
    return out


def diagram_to_dot(d: Dag, diagram: Iterable[Rope], name: str = "ropes") -> str:
    """Vertices and ropes; each rope is labelled with its down (▼) and up (▲) vertices."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in range(d.n):
        lines.append(f'  {v + 1} [label="{v + 1}"];')
    for r in diagram:
        tags = [f"▼{w + 1}" for w in iter_bits(r.down)] + [f"▲{w + 1}" for w in iter_bits(r.up)]
        lines.append(f'  {r.u + 1} -> {r.v + 1} [label="{" ".join(tags)}"];')
    lines.append("}")
    return "\n".join(lines)
