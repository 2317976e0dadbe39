"""Symbolic inequality systems, their instantiation at Lambda, and exact pruning.

Each well-covering triple (w, w', lam) gives the row

    <w lam, xi> <= <w0 w' lam, Lambda>,

and each simple compact root alpha gives the chamber row -<alpha^vee, xi> <= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _lp
from ._dd import vertices_and_rays
from ._exact import dot, fmt, vec
from .pairs import PairsEngine, WellCoveringTriple, engine
from .rootdata import (Coweight, HermitianPair, coroot, in_holomorphic_chamber,
                       in_positive_chamber, pairing)


class NotHolomorphicError(ValueError):
    pass


@dataclass(frozen=True)
class SymbolicInequality:
    normal: Coweight
    rhs_functional: Coweight
    source: dict = field(compare=False, hash=False)

    def instantiate(self, lam_weight: Sequence) -> "Row":
        return Row(vec(self.normal), pairing(self.rhs_functional, lam_weight), self.source)


@dataclass(frozen=True)
class Row:
    a: tuple[Fraction, ...]
    b: Fraction
    source: dict | None = field(default=None, compare=False, hash=False)

    def slack(self, xi: Sequence) -> Fraction:
        return self.b - dot(self.a, xi)


@dataclass(frozen=True)
class HPolyhedron:
    dim: int
    rows: tuple[Row, ...]
    sum_zero: bool = False
    labels: tuple[str, ...] | None = None

    @property
    def equations(self) -> list[list[int]]:
        return [[1] * self.dim] if self.sum_zero else []

    def contains(self, xi: Sequence) -> bool:
        if len(xi) != self.dim:
            raise ValueError(f"point has {len(xi)} coordinates, expected {self.dim}")
        x = _project(vec(xi), self.sum_zero)
        return all(r.slack(x) >= 0 for r in self.rows)

    def normalized(self) -> frozenset[tuple[tuple[int, ...], int]]:
        return frozenset(normalize_row(r.a, r.b, self.sum_zero) for r in self.rows)

    def translate(self, t: Sequence) -> "HPolyhedron":
        t = vec(t)
        return HPolyhedron(self.dim, tuple(Row(r.a, r.b + dot(r.a, t), r.source) for r in self.rows),
                           self.sum_zero, self.labels)


def _project(v: tuple[Fraction, ...], sum_zero: bool) -> tuple[Fraction, ...]:
    if not sum_zero:
        return v
    m = sum(v, Fraction(0)) / len(v)
    return tuple(x - m for x in v)


def normalize_row(a: Sequence, b, sum_zero: bool = False) -> tuple[tuple[int, ...], int]:
    """Positive rescaling of (a, b) to coprime integers (normal made zero-sum if needed)."""
    a = _project(vec(a), sum_zero)
    b = Fraction(b)
    den = math.lcm(b.denominator, *(x.denominator for x in a))
    ints = [int(x * den) for x in a]
    bi = int(b * den)
    g = math.gcd(bi, *ints) or 1
    return tuple(x // g for x in ints), bi // g


# ---------------------------------------------------------------- assembly

def assemble(pair: HermitianPair, eng: PairsEngine | None = None) -> list[SymbolicInequality]:
    eng = eng or engine(pair)
    g = eng.group
    rows = []
    for t in eng.triples:
        rows.append(SymbolicInequality(
            g.act_co(t.w, t.lam), g.act_co(g.mult(g.w0, t.w_prime), t.lam),
            {"kind": "triple", **eng.triple_json(t)}))
    zero = tuple(0 for _ in range(pair.ncoords))
    for i, a in enumerate(pair.simple_compact_roots, start=1):
        cv = coroot(pair, a)
        rows.append(SymbolicInequality(tuple(-x for x in cv), zero,
                                       {"kind": "chamber", "simple_root": i, "coroot": list(cv)}))
    return rows


def instantiate(pair: HermitianPair, system: Sequence[SymbolicInequality], lam_weight: Sequence,
                allow_boundary: bool = False) -> HPolyhedron:
    lw = pair.canonical(lam_weight)
    if not in_holomorphic_chamber(pair, lw) and not allow_boundary:
        raise NotHolomorphicError(f"Lambda = {[fmt(x) for x in lw]} is not in the holomorphic chamber")
    return HPolyhedron(pair.ncoords, tuple(s.instantiate(lw) for s in system),
                       pair.sum_zero, pair.labels)


def contains(hpoly: HPolyhedron, xi: Sequence) -> bool:
    return hpoly.contains(xi)


# ---------------------------------------------------------------- pruning

def is_redundant(hpoly: HPolyhedron, i: int, others: Sequence[int]) -> bool:
    row = hpoly.rows[i]
    A = [hpoly.rows[j].a for j in others]
    b = [hpoly.rows[j].b for j in others]
    res = _lp.maximize_free(row.a, A, b, hpoly.equations, [0] * len(hpoly.equations))
    if res.status == _lp.INFEASIBLE:
        raise ValueError("inconsistent system")
    return res.status == _lp.OPTIMAL and res.value <= row.b


def prune(hpoly: HPolyhedron) -> HPolyhedron:
    """Drop duplicate and LP-redundant rows; the survivors are irredundant."""
    seen = set()
    keep: list[int] = []
    for i, r in enumerate(hpoly.rows):
        key = normalize_row(r.a, r.b, hpoly.sum_zero)
        if all(x == 0 for x in key[0]):
            if key[1] < 0:
                raise ValueError("inconsistent system")
            continue
        if key not in seen:
            seen.add(key)
            keep.append(i)
    for i in list(keep):
        others = [j for j in keep if j != i]
        if is_redundant(hpoly, i, others):
            keep.remove(i)
    return HPolyhedron(hpoly.dim, tuple(hpoly.rows[i] for i in keep), hpoly.sum_zero, hpoly.labels)


# ---------------------------------------------------------------- containment

def vertices(hpoly: HPolyhedron):
    return vertices_and_rays([r.a for r in hpoly.rows], [r.b for r in hpoly.rows], hpoly.equations)


def containment_checks(pair: HermitianPair, system: Sequence[SymbolicInequality],
                       lam_weight: Sequence, max_rank: int = 8) -> dict:
    lw = pair.canonical(lam_weight)
    hp = prune(instantiate(pair, system, lw))
    if pair.rank > max_rank:
        raise NotImplementedError("vertex enumeration is capped at rank 8")
    verts, rays = vertices(hp)
    cone = [pair.canonical(b) for b in pair.noncompact_pos_roots]
    in_hol = [in_holomorphic_chamber(pair, v) for v in verts]
    in_cone = [_lp.in_cone(cone, [x - y for x, y in zip(v, lw)]) for v in verts]
    rays_ok = [_lp.in_cone(cone, r) for r in rays]
    report = {
        "n_vertices": len(verts), "n_rays": len(rays),
        "vertices_in_holomorphic_chamber": all(in_hol),
        "vertices_in_translated_cone": all(in_cone),
        "rays_in_cone": all(rays_ok),
        "lambda_in_polyhedron": hp.contains(lw),
    }
    report["ok"] = all(v for k, v in report.items() if isinstance(v, bool))
    return report


def central_translate_identity(pair: HermitianPair, system: Sequence[SymbolicInequality],
                               c=1) -> bool:
    """prune(system at c z0*) equals prune(system at 0) shifted by c z0*."""
    lc = pair.central_weight(c)
    at_c = prune(instantiate(pair, system, lc))
    base = prune(instantiate(pair, system, [0] * pair.ncoords, allow_boundary=True))
    return at_c.normalized() == base.translate(lc).normalized()


# ---------------------------------------------------------------- output

def to_json(hpoly: HPolyhedron) -> dict:
    out = {"dim": hpoly.dim,
           "rows": [{"a": [fmt(x) for x in r.a], "b": fmt(r.b), "source": r.source or {}}
                    for r in hpoly.rows]}
    if hpoly.sum_zero:
        out["coordinates"] = "zero-sum representatives"
    return out


def format_row(row: Row, labels: Sequence[str]) -> str:
    a, b, op = list(row.a), row.b, "<="
    lead = next((x for x in a if x != 0), 0)
    if lead < 0:
        a, b, op = [-x for x in a], -b, ">="
    terms = []
    for x, name in zip(a, labels):
        if x == 0:
            continue
        mag = abs(x)
        coef = "" if mag == 1 else f"{fmt(mag)} "
        terms.append(("- " if x < 0 else "+ ") + coef + name)
    if not terms:
        return f"0 {op} {fmt(b)}"
    lhs = " ".join(terms)
    lhs = lhs[2:] if lhs.startswith("+ ") else "-" + lhs[2:]
    return f"{lhs} {op} {fmt(b)}"


def to_text(hpoly: HPolyhedron) -> str:
    labels = hpoly.labels or tuple(f"xi{i + 1}" for i in range(hpoly.dim))
    return "\n".join(format_row(r, labels) for r in hpoly.rows)
