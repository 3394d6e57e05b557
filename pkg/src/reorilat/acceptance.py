"""The fourteen end-to-end verification runs, each reduced to a PASS/FAIL verdict.

Every run is a corpus sweep comparing two independent computations.  Vertex
scales default to the documented desk scales and can be lowered with
``max_vertices``.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from math import factorial
from typing import Callable

from . import congruence as cg
from . import geometry as geo
from .corpus import corpus
from .dag import NAMED, cliques, is_skeletal, is_vertebrate, tournament
from .lattice import ReorientationLattice, is_acyclic_reorientation, is_biclosed, structural_properties
from .poset import all_congruences
from .restriction import RestrictionMap, is_pathful, nonnesting_quotient_subgraphs
from .ropes import (
    bidiagrams,
    diagram_of,
    reorientation_of,
    rope_count_formula,
    rope_system,
)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] {self.number:2d}. {self.title} ({self.seconds:.1f}s)"

    def to_json_dict(self) -> dict:
        return {
            "number": self.number,
            "title": self.title,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "details": self.details,
        }


def _scale(default: int, max_vertices: int | None) -> int:
    return default if max_vertices is None else min(default, max_vertices)


def _graph_name(d) -> str:
    return repr(d)


# ------------------------------------------------------------------ 1..7: combinatorics


def lattice_characterization(max_vertices: int | None = None) -> tuple[bool, dict]:
    k = _scale(5, max_vertices)
    bad = []
    graphs = corpus(k)
    for d in graphs:
        if ReorientationLattice(d).poset.is_lattice() != is_vertebrate(d):
            bad.append(_graph_name(d))
    return not bad, {"max_vertices": k, "graphs": len(graphs), "exceptions": bad}


def biclosed_equals_acyclic(max_vertices: int | None = None) -> tuple[bool, dict]:
    k = _scale(5, max_vertices)
    bad = []
    graphs = corpus(k, where=lambda d: d.m <= 10 and is_vertebrate(d))
    subsets = 0
    for d in graphs:
        for b in range(1 << d.m):
            subsets += 1
            if is_biclosed(d, b) != is_acyclic_reorientation(d, b):
                bad.append((_graph_name(d), b))
    return not bad, {"max_vertices": k, "graphs": len(graphs), "subsets": subsets, "exceptions": bad[:10]}


def property_table(max_vertices: int | None = None) -> tuple[bool, dict]:
    k = _scale(5, max_vertices)
    bad = []
    graphs = corpus(k, where=is_vertebrate)
    for d in graphs:
        if structural_properties(d) != ReorientationLattice(d).property_oracles():
            bad.append(_graph_name(d))
    return not bad, {"max_vertices": k, "graphs": len(graphs), "exceptions": bad}


def counting_identities(max_vertices: int | None = None) -> tuple[bool, dict]:
    k = _scale(5, max_vertices)
    c4 = ReorientationLattice(NAMED["C4"])
    ok = len(c4) == 14 and c4.parity_split() == (8, 6)
    details: dict = {"C4": len(c4), "C4_parity": list(c4.parity_split())}
    for n in range(1, k + 1):
        size = len(ReorientationLattice(tournament(n)))
        details[f"K{n}"] = size
        ok &= size == factorial(n)
    bad = []
    graphs = corpus(k, where=is_skeletal)
    for d in graphs:
        lat = ReorientationLattice(d)
        counts = (
            len(rope_system(d)),
            rope_count_formula(d),
            len(cliques(d)),
            len(lat.join_irreducible_indices()),
        )
        if len(set(counts)) != 1:
            bad.append((_graph_name(d), counts))
    details.update({"skeletal_graphs": len(graphs), "rope_exceptions": bad})
    return ok and not bad, details


def diagram_bijection(max_vertices: int | None = None) -> tuple[bool, dict]:
    k = _scale(5, max_vertices)
    bad = []
    graphs = corpus(k, where=is_skeletal)
    for d in graphs:
        lat = ReorientationLattice(d)
        rs = rope_system(d)
        diagrams = rs.noncrossing_diagrams()
        forward = all(reorientation_of(d, diagram_of(d, e)) == e for e in lat.elements)
        backward = all(rs.mask(diagram_of(d, reorientation_of(d, rs.ropes_of(m)))) == m for m in diagrams)
        bidi = len(bidiagrams(d)) == lat.poset.interval_count()
        if not (len(diagrams) == len(lat) and forward and backward and bidi):
            bad.append(_graph_name(d))
    return not bad, {"max_vertices": k, "graphs": len(graphs), "exceptions": bad}


def congruence_lattice(max_vertices: int | None = None) -> tuple[bool, dict]:
    k = _scale(4, max_vertices)
    bad = []
    graphs = corpus(k, where=is_skeletal)
    for d in graphs:
        ideals = len(cg.ideal_masks(d))
        oracle = len(all_congruences(ReorientationLattice(d).poset))
        if ideals != oracle:
            bad.append((_graph_name(d), ideals, oracle))
    k3 = len(cg.ideal_masks(NAMED["K3"]))
    return not bad and k3 == 7, {"max_vertices": k, "graphs": len(graphs), "K3": k3, "exceptions": bad}


def catalan_quotients(max_vertices: int | None = None) -> tuple[bool, dict]:
    k = _scale(5, max_vertices)
    expected = {3: 5, 4: 14, 5: 42}
    ok = True
    details = {}
    for n in range(3, k + 1):
        subs = nonnesting_quotient_subgraphs(n)
        full = tournament(n)
        pathful = sum(1 for s in subs if is_pathful(RestrictionMap(full, s)))
        details[n] = {"count": len(subs), "pathful": pathful}
        ok &= len(subs) == expected[n] == pathful
    return ok, details


# ------------------------------------------------------------------ 8..11: geometry


def quotientope_realization(max_vertices: int | None = None, seeds: tuple[int, ...] = (1, 2, 3)) -> tuple[bool, dict]:
    k = _scale(4, max_vertices)
    bad = []
    runs = 0
    for d in corpus(k, where=is_skeletal):
        for ideal in cg.enumerate_ideals(d):
            for seed in seeds:
                q = geo.quotientope(d, ideal, geo.random_weights(len(ideal), seed))
                runs += 1
                if not geo.verify_quotientope(q).ok:
                    bad.append((_graph_name(d), ideal.to_text(), seed))
    return not bad, {"max_vertices": k, "seeds": list(seeds), "runs": runs, "exceptions": bad}


def shard_dual_consistency(max_vertices: int | None = None) -> tuple[bool, dict]:
    k = _scale(5, max_vertices)
    bad = []
    anchors = 0
    ropes = 0
    for d in corpus(k, where=is_skeletal):
        for r in rope_system(d).ropes:
            ropes += 1
            sp = geo.shard_polytope(d, r, check=False)
            if not geo.same_polytope(sp.vrep, sp.hrep):
                bad.append((_graph_name(d), r.to_text()))
            if r.up == 0:
                anchors += 1
                face = {geo.vsub(p, geo.unit(d.n, r.v)) for p in geo.simplex_face(d.n, r.support).vertices}
                if face != set(sp.vrep.vertices):
                    bad.append((_graph_name(d), r.to_text(), "anchor"))
    return not bad, {"max_vertices": k, "ropes": ropes, "anchors": anchors, "exceptions": bad}


def removahedron(max_vertices: int | None = None) -> tuple[bool, dict]:
    k = _scale(5, max_vertices)
    bad = []
    graphs = corpus(k, where=is_skeletal)
    for d in graphs:
        if not geo.check_removahedron(d).ok:
            bad.append(_graph_name(d))
    k3 = geo.check_removahedron(NAMED["K3"])
    return not bad and k3.vertex_count == 5, {"max_vertices": k, "graphs": len(graphs), "K3_vertices": k3.vertex_count, "exceptions": bad}


def simpliciality(max_vertices: int | None = None) -> tuple[bool, dict]:
    k = _scale(6, max_vertices)
    bad = []
    graphs = corpus(k)
    for d in graphs:
        if not geo.simpliciality_matches_chordful(d):
            bad.append(_graph_name(d))
    return not bad, {"max_vertices": k, "graphs": len(graphs), "exceptions": bad}


# ------------------------------------------------------------------ 12..14: experiments


def hamiltonicity(max_vertices: int | None = None) -> tuple[bool, dict]:
    k = _scale(5, max_vertices)
    kinds: dict[str, int] = {}
    bad = []
    for d in corpus(k, where=is_skeletal):
        ctx = cg.context(d)
        for mask in cg.ideal_masks(d):
            c = ctx.congruence(mask)
            h = cg.hamiltonicity(c.quotient_cover_graph())
            key = h.kind + (" (trivial)" if h.trivial else "")
            kinds[key] = kinds.get(key, 0) + 1
            if h.kind == "none" or (h.kind == "path" and not h.trivial):
                bad.append((_graph_name(d), mask, h.kind))
    c4 = cg.hamiltonicity(ReorientationLattice(NAMED["C4"]).cover_adjacency())
    return not bad and c4.kind == "none", {"max_vertices": k, "kinds": kinds, "C4": c4.kind, "exceptions": bad[:10]}


def conjecture_harness(max_vertices: int | None = None) -> tuple[bool, dict]:
    k = _scale(5, max_vertices)
    report = cg.conjecture_harness(corpus(k, where=is_skeletal))
    details = report.to_json_dict()
    details["max_vertices"] = k
    return report.ok, details


def poset_of_regions(max_vertices: int | None = None) -> tuple[bool, dict]:
    k = _scale(4, max_vertices)
    details: dict = {}
    ok = True
    for name, cfg in (("nonlattice", geo.NONLATTICE_CONFIGURATION), ("B4", geo.B4_CONFIGURATION)):
        slices = geo.check_simplicial_slices(cfg)
        lattice = geo.regions_lattice(cfg)
        details[name] = {"regions": len(cfg.regions), "simplicial_slices": slices, "lattice": lattice}
        ok &= slices and not lattice
    bad = []
    graphs = corpus(k, where=lambda d: d.m > 0)
    for d in graphs:
        cfg = geo.incidence_configuration(d)
        lat = ReorientationLattice(d)
        # both posets order the same sets by inclusion, so equal sets give equal posets
        if cfg.regions != sorted(lat.elements):
            bad.append(_graph_name(d))
    details.update({"max_vertices": k, "incidence_graphs": len(graphs), "exceptions": bad})
    return ok and not bad, details


CRITERIA: list[tuple[int, str, Callable[..., tuple[bool, dict]]]] = [
    (1, "lattice iff vertebrate", lattice_characterization),
    (2, "biclosed iff acyclic on vertebrate graphs", biclosed_equals_acyclic),
    (3, "structural property table", property_table),
    (4, "counting identities", counting_identities),
    (5, "non-crossing diagram bijection and bidiagrams", diagram_bijection),
    (6, "rope ideals = lattice congruences", congruence_lattice),
    (7, "Catalan many nonnesting quotients", catalan_quotients),
    (8, "quotientopes from shard polytopes", quotientope_realization),
    (9, "shard polytope V/H consistency", shard_dual_consistency),
    (10, "associahedron as removahedron", removahedron),
    (11, "simplicial fan iff chordful", simpliciality),
    (12, "Hamiltonian quotient graphs", hamiltonicity),
    (13, "conjecture harness", conjecture_harness),
    (14, "posets of regions", poset_of_regions),
]


def run_criterion(number: int, max_vertices: int | None = None) -> CriterionResult:
    for num, title, fn in CRITERIA:
        if num == number:
            start = time.perf_counter()
            passed, details = fn(max_vertices)
            return CriterionResult(num, title, bool(passed), details, time.perf_counter() - start)
    raise KeyError(f"no criterion {number}")


def run_all(max_vertices: int | None = None, only: list[int] | None = None, echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    out = []
    for num, _, _ in CRITERIA:
        if only and num not in only:
            continue
        res = run_criterion(num, max_vertices)
        if echo:
            echo(res.line())
        out.append(res)
    return out


def report_json(results: list[CriterionResult], **meta) -> str:
    return json.dumps(
        {"meta": meta, "all_passed": all(r.passed for r in results), "criteria": [r.to_json_dict() for r in results]},
        indent=2,
        default=str,
    )
