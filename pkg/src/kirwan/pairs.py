"""Well-covering triples (w, w', lam) and the admissible one-parameter subgroups.

A dominant indivisible coweight lam is admissible when its line is cut out by
kernels of noncompact positive roots.  A pair (w, w') of longest coset
representatives of W/W_lam is kept when

* l(w) + l(w') = l(w0) + l(w_lam) + #{beta > 0 noncompact : <lam, beta> > 0},
* s_{w0 w} . s_{w0 w'} . prod Theta(beta) over that set = s_{w0 w_lam} exactly,
* <w lam + w' lam, rho> + sum of the positive values <lam, beta> = 0.

The representation E defaults to p^-, whose weights are the negatives of the
noncompact positive roots; anything with the same weight-multiset interface
can be passed in.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from ._exact import nullspace, primitive, vec
from .rootdata import Coweight, HermitianPair, Weight, is_dominant_coweight, pairing
from .schubert import CohClass, SchubertRing
from .weyl import WeylElt, WeylGroup


@dataclass(frozen=True)
class OneParamSubgroup:
    lam: Coweight
    defining_set: tuple[Weight, ...]
    below_multiset: tuple[tuple[Weight, Fraction], ...]  # (beta, <lam, beta>) with value > 0

    @property
    def below_count(self) -> int:
        return len(self.below_multiset)

    @property
    def below_sum(self) -> Fraction:
        return sum((v for _, v in self.below_multiset), Fraction(0))


@dataclass(frozen=True)
class WellCoveringTriple:
    w: WeylElt
    w_prime: WeylElt
    ops: OneParamSubgroup

    @property
    def lam(self) -> Coweight:
        return self.ops.lam


class PairsEngine:
    """Bundles a pair with its Weyl group and Schubert ring."""

    def __init__(self, pair: HermitianPair, e_weights: Sequence[Weight] | None = None,
                 group: WeylGroup | None = None):
        self.pair = pair
        self.group = group or WeylGroup(pair)
        self.ring = SchubertRing(self.group)
        if e_weights is None:
            e_weights = [tuple(-x for x in b) for b in pair.noncompact_pos_roots]
        self.e_weights = [vec(g) for g in e_weights]

    # -- one-parameter subgroups
    def make_ops(self, lam: Sequence[int]) -> OneParamSubgroup:
        lam = tuple(int(x) for x in lam)
        defining = tuple(tuple(-x for x in g) for g in self.e_weights if pairing(lam, g) == 0)
        below = tuple((tuple(-x for x in g), -pairing(lam, g))
                      for g in self.e_weights if pairing(lam, g) < 0)
        return OneParamSubgroup(lam, defining, below)

    def _lattice_constraints(self) -> list[list[Fraction]]:
        return [[Fraction(1)] * self.pair.ncoords] if self.pair.sum_zero else []

    @cached_property
    def admissible(self) -> list[OneParamSubgroup]:
        pair = self.pair
        base = self._lattice_constraints()
        roots = [tuple(-x for x in g) for g in self.e_weights]
        lines = set()
        for subset in itertools.combinations(roots, pair.rank - 1):
            ker = nullspace(base + [list(r) for r in subset], pair.ncoords)
            if len(ker) == 1:
                g = primitive(ker[0])
                lines.add(g)
                lines.add(tuple(-x for x in g))
        dom = sorted(l for l in lines if is_dominant_coweight(pair, l))
        return [self.make_ops(l) for l in dom]

    def is_admissible_line(self, lam: Sequence[int]) -> bool:
        ops = self.make_ops(lam)
        ker = nullspace(self._lattice_constraints() + [list(r) for r in ops.defining_set],
                        self.pair.ncoords)
        return len(ker) == 1

    # -- the three conditions
    def length_prefilter(self, ops: OneParamSubgroup, w: WeylElt, wp: WeylElt) -> bool:
        _, w_lam = self.group.stabilizer(ops.lam)
        return w.length + wp.length == self.group.w0.length + w_lam.length + ops.below_count

    def cohomology_product(self, ops: OneParamSubgroup, w: WeylElt, wp: WeylElt,
                           m: int = 0) -> CohClass:
        ring, g = self.ring, self.group
        factor = ring.sigma(g.mult(g.w0, wp))
        # weights of E + C below m; the trivial summand contributes the zero weight
        weights = [(gam, 1) for gam in self.e_weights if pairing(ops.lam, gam) < m]
        if 0 < m:
            weights.append((tuple(Fraction(0) for _ in range(self.pair.ncoords)), 1))
        for gam, _ in weights:
            factor = ring.chevalley_mult(tuple(-x for x in gam), factor)
        return ring.cup(ring.sigma(g.mult(g.w0, w)), factor)

    def cohomology_condition(self, ops: OneParamSubgroup, w: WeylElt, wp: WeylElt,
                             m: int = 0) -> bool:
        return self.cohomology_product(ops, w, wp, m) == self.ring.j_star_point(ops.lam)

    def trace_value(self, ops: OneParamSubgroup, w: WeylElt, wp: WeylElt) -> Fraction:
        g = self.group
        s = [a + b for a, b in zip(g.act_co(w, ops.lam), g.act_co(wp, ops.lam))]
        return pairing(s, self.pair.rho) + ops.below_sum

    def trace_condition(self, ops: OneParamSubgroup, w: WeylElt, wp: WeylElt) -> bool:
        return self.trace_value(ops, w, wp) == 0

    def passes(self, ops: OneParamSubgroup, w: WeylElt, wp: WeylElt) -> bool:
        return (self.length_prefilter(ops, w, wp) and self.trace_condition(ops, w, wp)
                and self.cohomology_condition(ops, w, wp))

    # -- enumeration
    def triples_for(self, ops: OneParamSubgroup) -> list[WellCoveringTriple]:
        reps = self.group.max_coset_reps(ops.lam)
        out = [WellCoveringTriple(w, wp, ops) for w in reps for wp in reps
               if self.passes(ops, w, wp)]
        out.sort(key=lambda t: (t.w.length, t.w_prime.length,
                                self.group.word(t.w), self.group.word(t.w_prime)))
        return out

    @cached_property
    def triples(self) -> list[WellCoveringTriple]:
        return [t for ops in self.admissible for t in self.triples_for(ops)]

    def triple_json(self, t: WellCoveringTriple) -> dict:
        return {"lambda": list(t.lam), "w": self.group.format(t.w),
                "w_prime": self.group.format(t.w_prime),
                "defining_roots": [[_num(x) for x in r] for r in t.ops.defining_set]}


def _num(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def mu_numeric(group: WeylGroup, w: WeylElt, wp: WeylElt, m, lam: Sequence[int],
               mu: Sequence, nu: Sequence, r) -> Fraction:
    """Hilbert-Mumford value <w lam, mu> + <w' lam, nu> + m r."""
    return (pairing(group.act_co(w, lam), vec(mu)) + pairing(group.act_co(wp, lam), vec(nu))
            + Fraction(m) * Fraction(r))


_ENGINES: dict[str, PairsEngine] = {}


def engine(pair: HermitianPair) -> PairsEngine:
    """Cached default engine (E = p^-) for a pair."""
    key = pair.spec
    if key not in _ENGINES:
        _ENGINES[key] = PairsEngine(pair)
    return _ENGINES[key]


def enumerate_admissible(pair: HermitianPair) -> list[OneParamSubgroup]:
    return engine(pair).admissible


def enumerate_triples(pair: HermitianPair) -> list[WellCoveringTriple]:
    return engine(pair).triples
