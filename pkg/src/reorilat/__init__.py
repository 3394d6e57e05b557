"""Acyclic reorientation lattices of directed acyclic graphs, their lattice
congruences via ropes, and exact polytopal realizations of their quotients."""

from __future__ import annotations

from .dag import NAMED, Dag, from_one_based, load_graph, tournament
from .kernels import BACKEND
from .lattice import ReorientationLattice, enumerate_reorientations

__all__ = ["BACKEND", "NAMED", "Dag", "ReorientationLattice", "enumerate_reorientations", "from_one_based", "load_graph", "tournament"]
__version__ = "0.1.0"
