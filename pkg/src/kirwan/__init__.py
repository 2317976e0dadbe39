"""Exact facet inequalities of Kirwan polyhedra for holomorphic coadjoint orbits.

Pipeline: :mod:`rootdata` (Hermitian pairs) -> :mod:`weyl` -> :mod:`schubert`
-> :mod:`pairs` (well-covering triples) -> :mod:`polyhedron` (instantiate and
prune), with :mod:`oracle` as a floating-point moment-map cross-check.
"""

from .pairs import OneParamSubgroup, PairsEngine, WellCoveringTriple, enumerate_triples
from .polyhedron import HPolyhedron, assemble, instantiate, prune
from .rootdata import Family, HermitianPair, build_pair, parse_spec
from .schubert import CohClass, SchubertRing
from .weyl import WeylElt, WeylGroup

__all__ = [
    "CohClass", "Family", "HPolyhedron", "HermitianPair", "OneParamSubgroup", "PairsEngine",
    "SchubertRing", "WeylElt", "WeylGroup", "WellCoveringTriple", "assemble", "build_pair",
    "enumerate_triples", "instantiate", "parse_spec", "prune",
]
