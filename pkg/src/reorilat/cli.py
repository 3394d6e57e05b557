"""Command-line entry point ``reorilat``.

Vertices are named by their 1-based labels everywhere on the command line and
in every output file.
"""

from __future__ import annotations

import functools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from . import acceptance
from . import geometry as geo
from .congruence import (
    Congruence,
    RopeIdeal,
    cambrian_ideal,
    coherent_ideal,
    context,
    full_ideal,
    ideal_from_ropes,
    partial_reorientation,
    principal_ideal,
    sylvester_ideal,
)
from .corpus import MAX_CORPUS_N, corpus
from .dag import Dag, is_chordal, is_chordful, is_filled, is_skeletal, is_vertebrate, load_graph, mask_of, to_json, to_text
from .errors import GraphFormatError, NotSkeletal, ReorilatError
from .lattice import ReorientationLattice, structural_properties
from .restriction import RestrictionMap, classify_lattice_map, first_failure_witness
from .ropes import parse_rope, rope_from_dict, rope_system

FORMATS = click.Choice(["text", "json", "dot"])


def _fail(reason: str) -> None:
    click.echo(f"error: {reason}", err=True)
    sys.exit(2)


def guarded(fn):
    """Turn library errors into a one-line reason and a nonzero exit."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ReorilatError as exc:
            _fail(f"{type(exc).__name__}: {exc}")
        except (ValueError, KeyError) as exc:
            _fail(f"{type(exc).__name__}: {exc}")

    return wrapper


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _vertex_set(text: str, n: int) -> int:
    text = text.strip()
    if "=" in text:
        text = text.split("=", 1)[1]
    labels = [x for x in text.replace("+", ",").replace(" ", ",").split(",") if x]
    try:
        verts = [int(x) for x in labels]
    except ValueError:
        raise GraphFormatError(f"malformed vertex list {text!r}") from None
    if any(not 1 <= v <= n for v in verts):
        raise GraphFormatError(f"vertex out of range 1..{n} in {text!r}")
    return mask_of(v - 1 for v in verts)


def _parse_principal(text: str):
    if "|" in text:
        return parse_rope(text)
    parts = text.split(",")
    if len(parts) != 4:
        raise GraphFormatError(f"malformed rope {text!r}: expected 'u,v,DOWN,UP' or 'u v | down | up'")
    return parse_rope(f"{parts[0]} {parts[1]} | {parts[2].replace('+', ' ')} | {parts[3].replace('+', ' ')}")


def _parse_coherent(text: str, n: int) -> tuple[int, int]:
    down = up = 0
    for token in text.replace(";", " ").split():
        key, _, value = token.partition("=")
        if key.upper() == "DOWN":
            down = _vertex_set(value, n)
        elif key.upper() == "UP":
            up = _vertex_set(value, n)
        else:
            raise GraphFormatError(f"malformed coherent spec {text!r}: expected 'DOWN=.. UP=..'")
    return down, up


def _read_ideal(d: Dag, path: str) -> RopeIdeal:
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("["):
        ropes = [rope_from_dict(obj) for obj in json.loads(text)]
    else:
        ropes = [parse_rope(line) for line in text.splitlines() if line.strip() and not line.startswith("#")]
    return ideal_from_ropes(d, ropes)


def select_ideal(d: Dag, sylvester: bool, cambrian: str | None, coherent: str | None, principal: str | None, ideal_file: str | None, default_full: bool = False) -> tuple[RopeIdeal, str]:
    chosen = [x for x in (sylvester or None, cambrian, coherent, principal, ideal_file) if x is not None]
    if len(chosen) > 1:
        raise GraphFormatError("congruence selectors are mutually exclusive")
    if not chosen:
        if default_full:
            return full_ideal(d), "full"
        raise GraphFormatError("choose one of --sylvester, --cambrian, --coherent, --principal, --ideal-file")
    if sylvester:
        return sylvester_ideal(d), "sylvester"
    if cambrian is not None:
        return cambrian_ideal(d, _vertex_set(cambrian, d.n)), "cambrian"
    if coherent is not None:
        down, up = _parse_coherent(coherent, d.n)
        return coherent_ideal(d, down, up), "coherent"
    if principal is not None:
        rs = rope_system(d)
        r = _parse_principal(principal)
        if r not in rs.index:
            raise GraphFormatError(f"{r.to_text()!r} is not a rope of the graph")
        return principal_ideal(d, r), "principal"
    return _read_ideal(d, ideal_file), "file"


def congruence_options(fn):
    for opt in reversed(
        [
            click.option("--sylvester", is_flag=True, help="Sylvester congruence (DOWN = all vertices, UP = none)."),
            click.option("--cambrian", metavar="DOWN=..", help="Cambrian congruence; UP is the complement of DOWN."),
            click.option("--coherent", metavar="'DOWN=.. UP=..'", help="Coherent congruence with both decorations."),
            click.option("--principal", metavar="ROPE", help="Principal congruence of a rope, 'u,v,DOWN,UP' or 'u v | down | up'."),
            click.option("--ideal-file", type=click.Path(exists=True, dir_okay=False), help="Rope ideal, one rope per line or JSON."),
        ]
    ):
        fn = opt(fn)
    return fn


def _write(out: str | None, name: str, content: str) -> None:
    if out is None:
        return
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    (path / name).write_text(content, encoding="utf-8")


def _arcs_text(arcs) -> str:
    return " ".join(f"{u}{v}" if max(u, v) < 10 else f"{u}-{v}" for u, v in arcs) or "-"


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Acyclic reorientation lattices, their congruences and quotientopes."""


# ------------------------------------------------------------------ analyze


def analyze_report(d: Dag) -> dict:
    lat = ReorientationLattice(d)
    vertebrate = is_vertebrate(d)
    report = {
        "n": d.n,
        "arcs": [[u + 1, v + 1] for u, v in d.arcs],
        "vertebrate": vertebrate,
        "filled": is_filled(d),
        "skeletal": is_skeletal(d),
        "chordal": is_chordal(d),
        "chordful": is_chordful(d),
        "size": len(lat),
        "lattice": lat.poset.is_lattice(),
        "join_irreducibles": len(lat.join_irreducible_indices()),
        "meet_irreducibles": len(lat.meet_irreducible_indices()),
        "ropes": len(rope_system(d)) if is_skeletal(d) else None,
    }
    if vertebrate:
        report.update(structural_properties(d))
    return report


@main.command()
@click.argument("graph")
@click.option("--format", "fmt", type=FORMATS, default="text")
@guarded
def analyze(graph: str, fmt: str) -> None:
    """Structural predicates, lattice verdict and counts for GRAPH (file or name like K4)."""
    d = load_graph(graph)
    rep = analyze_report(d)
    if fmt == "json":
        click.echo(json.dumps(rep, indent=2))
        return
    if fmt == "dot":
        click.echo(ReorientationLattice(d).to_dot(), nl=False)
        return
    for key in ("vertebrate", "filled", "skeletal", "chordal", "chordful"):
        click.echo(f"{key}: {_yn(rep[key])}")
    if rep["lattice"]:
        click.echo(f"lattice: yes (vertebrate), semidistributive: {_yn(rep['semidistributive'])}, |AR|={rep['size']}")
        click.echo(
            f"distributive: {_yn(rep['distributive'])}, congruence normal: {_yn(rep['congruence_normal'])}, "
            f"congruence uniform: {_yn(rep['congruence_uniform'])}"
        )
    else:
        click.echo(f"lattice: no, |AR|={rep['size']}")
    click.echo(f"join irreducibles: {rep['join_irreducibles']}, meet irreducibles: {rep['meet_irreducibles']}")
    ropes = rep["ropes"] if rep["ropes"] is not None else "n/a (not skeletal)"
    click.echo(f"|AR|={rep['size']}, ropes={ropes}")


# ------------------------------------------------------------------ quotient


def _class_rows(c: Congruence) -> list[dict]:
    lat = c.ctx.lattice
    rows = []
    for k in range(len(c)):
        p = partial_reorientation(c, [k])
        rows.append(
            {
                "class": k,
                "size": c.classes[k].bit_count(),
                "min": repr(lat.reorientation(c.minima[k])),
                "max": repr(lat.reorientation(c.maxima[k])),
                "P": p.oriented_arcs_1based(),
                "R": p.reduction().oriented_arcs_1based(),
            }
        )
    return rows


def quotient_dot(c: Congruence) -> str:
    lat = c.ctx.lattice
    q = c.quotient
    lines = ["digraph Quotient {"]
    for k, m in enumerate(c.minima):
        lines.append(f'  {k} [label="{lat.reorientation(m)!r}"];')
    for a, b in q.covers:
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


@main.command()
@click.argument("graph")
@congruence_options
@click.option("--format", "fmt", type=FORMATS, default="text")
@click.option("--out", type=click.Path(file_okay=False), help="Directory for classes.json and quotient.dot.")
@guarded
def quotient(graph, sylvester, cambrian, coherent, principal, ideal_file, fmt, out) -> None:
    """Classes, quotient Hasse diagram and partial reorientations of a congruence."""
    d = load_graph(graph)
    ideal, kind = select_ideal(d, sylvester, cambrian, coherent, principal, ideal_file)
    c = context(d).congruence(ideal)
    data = c.to_json_dict()
    data["kind"] = kind
    _write(out, "classes.json", json.dumps(data, indent=2))
    _write(out, "quotient.dot", quotient_dot(c))
    _write(out, "ideal.txt", ideal.to_text() + "\n")
    if fmt == "json":
        click.echo(json.dumps(data, indent=2))
    elif fmt == "dot":
        click.echo(quotient_dot(c), nl=False)
    else:
        click.echo(f"congruence: {kind}, ropes kept: {len(ideal)}/{len(rope_system(d))}")
        click.echo(f"classes: {len(c)}")
        for row in _class_rows(c):
            p = _arcs_text(row["P"])
            r = _arcs_text(row["R"])
            click.echo(f"  class {row['class']}: size {row['size']}, min {row['min']}, max {row['max']}, P {p}, R {r}")
        click.echo(f"quotient covers: {len(c.quotient.covers)}")


# ------------------------------------------------------------------ polytope


@main.command()
@click.argument("graph")
@congruence_options
@click.option("--seed", type=int, default=None, help="Seed for random positive weights (default: all weights 1).")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--out", type=click.Path(file_okay=False), help="Directory for vertex and inequality exports.")
@guarded
def polytope(graph, sylvester, cambrian, coherent, principal, ideal_file, seed, fmt, out) -> None:
    """Quotientope as a Minkowski sum of shard polytopes, verified against the quotient.

    Without a congruence selector the full ideal is used, giving the graphical
    zonotope up to translation.
    """
    d = load_graph(graph)
    if not is_skeletal(d):
        raise NotSkeletal(f"{d!r} is not skeletal")
    ideal, kind = select_ideal(d, sylvester, cambrian, coherent, principal, ideal_file, default_full=True)
    weights = geo.random_weights(len(ideal), seed) if seed is not None else None
    q = geo.quotientope(d, ideal, weights, check_summands=True)
    check = geo.verify_quotientope(q, check_faces=len(q.graph.vertices) <= 30)
    poly = q.polytope
    report = {
        "kind": kind,
        "seed": seed,
        "weights": [geo.format_q(w) for w in q.weights],
        "vertices": len(poly),
        "classes": len(q.congruence),
        "edges": len(q.graph.edges),
        "verified": check.ok,
        "checks": {
            "same_class_same_vertex": check.same_class_same_vertex,
            "distinct_classes_distinct_vertices": check.distinct_classes_distinct_vertices,
            "oriented_graph_is_quotient_hasse": check.hasse_matches,
            "edges_along_arc_directions": check.edge_directions_ok,
            "edges_are_hull_edges": check.edges_are_faces,
        },
    }
    _write(out, "vertices.txt", poly.to_text())
    _write(out, "vertices.json", poly.to_json())
    if kind == "sylvester":
        h = geo.associahedron_removahedron(d)
        rem = geo.check_removahedron(d)
        report["removahedron_agrees"] = rem.ok
        _write(out, "hrep.txt", h.to_text())
        _write(out, "hrep.json", h.to_json())
    _write(out, "report.json", json.dumps(report, indent=2))
    if fmt == "json":
        click.echo(json.dumps(report, indent=2))
    else:
        click.echo(f"congruence: {kind}, vertices: {report['vertices']}, classes: {report['classes']}, edges: {report['edges']}")
        if "removahedron_agrees" in report:
            click.echo(f"removahedron agrees: {str(report['removahedron_agrees']).lower()}")
        click.echo(f"verified: {str(check.ok).lower()}")
    if not check.ok:
        sys.exit(1)


# ------------------------------------------------------------------ classify-restriction


@main.command("classify-restriction")
@click.argument("graph")
@click.argument("subgraph")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@guarded
def classify_restriction(graph: str, subgraph: str, fmt: str) -> None:
    """Classify the restriction map from GRAPH to its spanning SUBGRAPH."""
    m = RestrictionMap(load_graph(graph), load_graph(subgraph))
    cls = classify_lattice_map(m)
    data = {
        "fibers_are_intervals": cls.fibers_are_intervals,
        "lattice_quotient_map": cls.is_lattice_quotient_map,
        "interval_isomorphism": cls.is_interval_isomorphism,
        "weakly_pathful": cls.weakly_pathful,
        "pathful": cls.pathful,
        "strongly_pathful": cls.strongly_pathful,
        "witness": first_failure_witness(m),
    }
    if fmt == "json":
        click.echo(json.dumps(data, indent=2))
        return
    for key, value in data.items():
        if key == "witness":
            if value:
                click.echo(f"witness: {value}")
        else:
            click.echo(f"{key.replace('_', ' ')}: {_yn(value)}")


# ------------------------------------------------------------------ verify


def _run_one(args: tuple[int, int | None]) -> acceptance.CriterionResult:
    number, max_vertices = args
    return acceptance.run_criterion(number, max_vertices)


@main.command()
@click.option("--max-vertices", type=click.IntRange(1, 6), default=None, help="Cap every corpus sweep at this many vertices.")
@click.option("--skeletal-only", is_flag=True, help="Only the sweeps over skeletal graphs (criteria 4-6, 8-10, 12, 13).")
@click.option("--only", type=str, default=None, help="Comma-separated criterion numbers.")
@click.option("--workers", type=click.IntRange(1, 64), default=1, help="Processes for running criteria in parallel.")
@click.option("--report", type=click.Path(dir_okay=False), default=None, help="Write the JSON report here.")
@guarded
def verify(max_vertices, skeletal_only, only, workers, report) -> None:
    """Run the acceptance suite; exit 0 iff every selected criterion passes."""
    numbers = [n for n, _, _ in acceptance.CRITERIA]
    if only:
        wanted = {int(x) for x in only.split(",") if x.strip()}
        numbers = [n for n in numbers if n in wanted]
    if skeletal_only:
        numbers = [n for n in numbers if n in (4, 5, 6, 8, 9, 10, 12, 13)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, [(n, max_vertices) for n in numbers]))
        for r in results:
            click.echo(r.line())
    else:
        results = []
        for n in numbers:
            r = acceptance.run_criterion(n, max_vertices)
            click.echo(r.line())
            results.append(r)
    passed = sum(r.passed for r in results)
    click.echo(f"{passed}/{len(results)} criteria passed")
    if report:
        Path(report).write_text(acceptance.report_json(results, max_vertices=max_vertices, workers=workers), encoding="utf-8")
    sys.exit(0 if passed == len(results) else 1)


# ------------------------------------------------------------------ corpus


@main.command("corpus")
@click.option("--max-vertices", type=click.IntRange(1, MAX_CORPUS_N), default=4)
@click.option("--min-vertices", type=click.IntRange(1, MAX_CORPUS_N), default=1)
@click.option("--skeletal-only", is_flag=True)
@click.option("--vertebrate-only", is_flag=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="json")
@click.option("--out", type=click.Path(file_okay=False), help="Write one file per graph instead of printing.")
@guarded
def corpus_cmd(max_vertices, min_vertices, skeletal_only, vertebrate_only, fmt, out) -> None:
    """List all DAGs up to isomorphism (one JSON object per line by default)."""

    def keep(d: Dag) -> bool:
        return (not skeletal_only or is_skeletal(d)) and (not vertebrate_only or is_vertebrate(d))

    graphs = corpus(max_vertices, min_vertices, keep)
    for k, d in enumerate(graphs):
        body = to_json(d) + "\n" if fmt == "json" else to_text(d)
        if out:
            _write(out, f"g{d.n}_{k:05d}.{'json' if fmt == 'json' else 'txt'}", body)
        else:
            # text graphs are separated by a blank line
            click.echo(body.rstrip("\n") + ("\n" if fmt == "text" else ""))
    if out:
        click.echo(f"wrote {len(graphs)} graphs to {out}")


if __name__ == "__main__":  # pragma: no cover
    main()
