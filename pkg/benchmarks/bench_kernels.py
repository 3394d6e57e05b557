"""Compiled kernels against the pure-Python fallback.

Run ``python benchmarks/bench_kernels.py`` after building the extension.
"""

from __future__ import annotations

import argparse
import timeit

from reorilat import _pykernels
from reorilat.dag import NAMED, tournament

try:
    from reorilat import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None


def _enum_case(d):
    tails = [u for u, _ in d.arcs]
    heads = [v for _, v in d.arcs]
    return lambda mod: mod.acyclic_reorientations(d.n, tails, heads)


def _ham_case(adj, cycle):
    return lambda mod: mod.hamiltonian_search(adj, cycle)


def _permutohedron(n):
    import itertools

    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    adj = []
    for p in perms:
        nb = []
        for i in range(n - 1):
            q = list(p)
            q[i], q[i + 1] = q[i + 1], q[i]
            nb.append(index[tuple(q)])
        adj.append(sorted(nb))
    return adj


def _tamari(n):
    from reorilat.congruence import congruence_from_ideal, sylvester_ideal

    d = tournament(n)
    return [sorted(a) for a in congruence_from_ideal(d, sylvester_ideal(d)).quotient_cover_graph()]


def _cover_graph(d):
    from reorilat.lattice import ReorientationLattice

    lat = ReorientationLattice(d)
    adj = [[] for _ in lat.elements]
    for a, b in lat.poset.covers:
        adj[a].append(b)
        adj[b].append(a)
    return [sorted(a) for a in adj]


CASES = [
    ("enumerate AR(K5)", _enum_case(tournament(5))),
    ("enumerate AR(K6)", _enum_case(tournament(6))),
    ("enumerate AR(K7)", _enum_case(tournament(7))),
    ("hamiltonian cycle, permutohedron(5)", _ham_case(_permutohedron(5), True)),
    ("hamiltonian cycle, Tamari(K5)", lambda mod: mod.hamiltonian_search(_tamari(5), True)),
    ("hamiltonian path, C4 lattice (none)", lambda mod: mod.hamiltonian_search(_cover_graph(NAMED["C4"]), False)),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mods = [("python", _pykernels)] + ([("compiled", _ckernels)] if _ckernels else [])
    print(f"{'case':40s}" + "".join(f"{name:>12s}" for name, _ in mods) + ("     speedup" if len(mods) == 2 else ""))
    for title, case in CASES:
        times = []
        for _, mod in mods:
            t = min(timeit.repeat(lambda: case(mod), number=1, repeat=args.repeat))
            times.append(t)
        row = f"{title:40s}" + "".join(f"{t * 1000:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
