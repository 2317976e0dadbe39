"""Root data of the classical Hermitian pairs (G, K).

Coordinates
-----------
* ``sp`` (Sp(2n, R), K = U(n)) and ``so_star`` (SO*(2n), K = U(n)): the
  diagonal torus of U(n), coordinates e_1..e_n.
* ``su`` (SU(p, q), K = S(U(p) x U(q))): p+q coordinates.  Coweights are
  integer vectors with zero sum; weights are taken modulo (1, ..., 1) and
  stored through their zero-sum representative.  SU(n, 1) is the case q = 1.
* ``so`` (SO_0(p, 2), K = SO(p) x SO(2)): coordinate 0 is the SO(2) factor,
  coordinates 1..floor(p/2) the maximal torus of SO(p).

In all four models the invariant form on t* is a positive multiple of the
standard dot product, so ``killing_gram`` is the identity.  Only its sign is
ever used.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._exact import Vec, dot, vec

Weight = Vec
Coweight = tuple[int, ...]


class Family(enum.Enum):
    SpR = "sp"
    SUpq = "su"
    SOstar = "so_star"
    SOp2 = "so"


class ParameterError(ValueError):
    """Invalid family parameters."""


class SpecParseError(ValueError):
    """Malformed group spec string; ``pos`` is the offending character index."""

    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class HermitianPair:
    family: Family
    params: tuple[tuple[str, int], ...]
    rank: int                      # dim of the torus t
    ncoords: int                   # length of coordinate vectors
    sum_zero: bool                 # coweights constrained to sum zero
    compact_pos_roots: tuple[Weight, ...]
    noncompact_pos_roots: tuple[Weight, ...]
    simple_compact_roots: tuple[Weight, ...]
    rho: Weight
    z0: Vec
    killing_gram: tuple[Vec, ...] = field(repr=False)
    labels: tuple[str, ...] = field(repr=False)

    @property
    def spec(self) -> str:
        return format_spec(self)

    def param(self, name: str) -> int:
        return dict(self.params)[name]

    def canonical(self, mu: Sequence) -> Weight:
        """Fixed representative of a weight (zero-sum for SU(p, q))."""
        v = vec(mu)
        if len(v) != self.ncoords:
            raise ValueError(f"expected {self.ncoords} coordinates, got {len(v)}")
        if self.sum_zero:
            m = sum(v, Fraction(0)) / len(v)
            v = tuple(x - m for x in v)
        return v

    def form(self, a: Sequence, b: Sequence) -> Fraction:
        """The invariant form (., .) on t* through the Gram matrix."""
        a, b = self.canonical(a), self.canonical(b)
        return sum((a[i] * g * b[j] for i, row in enumerate(self.killing_gram)
                    for j, g in enumerate(row) if g), Fraction(0))

    def is_coweight(self, lam: Sequence) -> bool:
        if len(lam) != self.ncoords:
            return False
        if any(Fraction(x).denominator != 1 for x in lam):
            return False
        return not self.sum_zero or sum(lam) == 0

    def all_roots(self) -> frozenset[Weight]:
        pos = self.compact_pos_roots + self.noncompact_pos_roots
        return frozenset(pos) | frozenset(tuple(-x for x in r) for r in pos)

    def central_weight(self, c=1) -> Weight:
        """c times the weight dual to z0 (central in k)."""
        return self.canonical(tuple(Fraction(c) * x for x in self.z0))


def pairing(lam: Sequence, mu: Sequence) -> Fraction:
    """Canonical duality <lam, mu> between a coweight and a weight."""
    if len(lam) != len(mu):
        raise ValueError(f"rank mismatch: {len(lam)} vs {len(mu)}")
    return dot(lam, mu)


def coroot(pair: HermitianPair, alpha: Sequence) -> Coweight:
    a = vec(alpha)
    if a not in pair.all_roots() or a in pair.noncompact_pos_roots or \
            tuple(-x for x in a) in pair.noncompact_pos_roots:
        raise ValueError(f"{alpha} is not a compact root")
    n2 = dot(a, a)
    out = tuple(2 * x / n2 for x in a)
    if any(x.denominator != 1 for x in out):
        raise ArithmeticError("non-integral coroot")
    return tuple(int(x) for x in out)


def in_positive_chamber(pair: HermitianPair, xi: Sequence) -> bool:
    x = pair.canonical(xi)
    return all(pairing(coroot(pair, a), x) >= 0 for a in pair.simple_compact_roots)


def in_holomorphic_chamber(pair: HermitianPair, xi: Sequence) -> bool:
    if not in_positive_chamber(pair, xi):
        return False
    return all(pair.form(b, xi) > 0 for b in pair.noncompact_pos_roots)


def is_dominant_coweight(pair: HermitianPair, lam: Sequence) -> bool:
    return all(pairing(lam, a) >= 0 for a in pair.simple_compact_roots)


# ---------------------------------------------------------------- builders

def _e(n: int, *terms: tuple[int, int]) -> Weight:
    v = [Fraction(0)] * n
    for i, c in terms:
        v[i] += c
    return tuple(v)


def _identity(n: int) -> tuple[Vec, ...]:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def _type_a(n: int, start: int, size: int):
    pos = [_e(n, (start + i, 1), (start + j, -1))
           for i in range(size) for j in range(i + 1, size)]
    simple = [_e(n, (start + i, 1), (start + i + 1, -1)) for i in range(size - 1)]
    return pos, simple


def _half_sum(n: int, roots) -> Weight:
    tot = [Fraction(0)] * n
    for r in roots:
        tot = [a + b for a, b in zip(tot, r)]
    return tuple(x / 2 for x in tot)


def build_pair(family: Family | str, **params: int) -> HermitianPair:
    fam = Family(family) if isinstance(family, str) else family
    for k, v in params.items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise ParameterError(f"parameter {k} must be an integer")
    if fam is Family.SpR:
        n = _need(params, "n")
        if n < 1:
            raise ParameterError("sp requires n >= 1")
        comp, simple = _type_a(n, 0, n)
        nonc = [_e(n, (i, 1), (j, 1)) for i in range(n) for j in range(i, n)]
        return _finish(fam, (("n", n),), n, n, False, comp, nonc, simple,
                       tuple(Fraction(1, 2) for _ in range(n)),
                       tuple(f"xi{i + 1}" for i in range(n)))
    if fam is Family.SOstar:
        n = _need(params, "n")
        if n < 3:
            raise ParameterError("so_star requires n >= 3")
        comp, simple = _type_a(n, 0, n)
        nonc = [_e(n, (i, 1), (j, 1)) for i in range(n) for j in range(i + 1, n)]
        return _finish(fam, (("n", n),), n, n, False, comp, nonc, simple,
                       tuple(Fraction(1, 2) for _ in range(n)),
                       tuple(f"xi{i + 1}" for i in range(n)))
    if fam is Family.SUpq:
        p, q = _need(params, "p"), _need(params, "q")
        if not (p >= q >= 1):
            raise ParameterError("su requires p >= q >= 1")
        N = p + q
        c1, s1 = _type_a(N, 0, p)
        c2, s2 = _type_a(N, p, q)
        nonc = [_e(N, (i, 1), (p + j, -1)) for i in range(p) for j in range(q)]
        z0 = tuple(Fraction(q, N) if i < p else Fraction(-p, N) for i in range(N))
        return _finish(fam, (("p", p), ("q", q)), N - 1, N, True, c1 + c2, nonc,
                       s1 + s2, z0, tuple(f"xi{i + 1}" for i in range(N)))
    if fam is Family.SOp2:
        p = _need(params, "p")
        q = params.get("q", 2)
        if q != 2:
            raise ParameterError("so requires q = 2")
        if p < 3:
            raise ParameterError("so requires p >= 3")
        m = p // 2
        n = m + 1
        comp = []
        for i in range(1, n):
            for j in range(i + 1, n):
                comp += [_e(n, (i, 1), (j, -1)), _e(n, (i, 1), (j, 1))]
        simple = [_e(n, (i, 1), (i + 1, -1)) for i in range(1, m)]
        nonc = []
        for i in range(1, n):
            nonc += [_e(n, (0, 1), (i, -1)), _e(n, (0, 1), (i, 1))]
        if p % 2:
            comp += [_e(n, (i, 1)) for i in range(1, n)]
            nonc.append(_e(n, (0, 1)))
            simple.append(_e(n, (m, 1)))
        else:
            simple.append(_e(n, (m - 1, 1), (m, 1)))
        z0 = _e(n, (0, 1))
        return _finish(fam, (("p", p), ("q", 2)), n, n, False, comp, nonc, simple, z0,
                       tuple(f"xi{i}" for i in range(n)))
    raise ParameterError(f"unknown family {family}")  # pragma: no cover


def _need(params: dict, name: str) -> int:
    if name not in params:
        raise ParameterError(f"missing parameter {name}")
    return params[name]


def _finish(fam, params, rank, ncoords, sum_zero, comp, nonc, simple, z0, labels):
    comp = sorted(set(comp), reverse=True)
    return HermitianPair(
        family=fam, params=params, rank=rank, ncoords=ncoords, sum_zero=sum_zero,
        compact_pos_roots=tuple(comp), noncompact_pos_roots=tuple(nonc),
        simple_compact_roots=tuple(simple), rho=_half_sum(ncoords, comp),
        z0=tuple(z0), killing_gram=_identity(ncoords), labels=labels)


# ---------------------------------------------------------------- spec strings

_SPEC_RE = re.compile(r"([a-z_]+)=(-?\d+)")


def parse_spec(text: str) -> HermitianPair:
    """Parse 'sp:n=3', 'su:p=2,q=2', 'so_star:n=4', 'so:p=5,q=2'."""
    s = text.strip()
    head, colon, tail = s.partition(":")
    if not colon:
        raise SpecParseError("expected '<family>:<params>'", len(s))
    try:
        fam = Family(head)
    except ValueError:
        raise SpecParseError(f"unknown family {head!r}", 0) from None
    params: dict[str, int] = {}
    pos = len(head) + 1
    for chunk in tail.split(","):
        m = _SPEC_RE.fullmatch(chunk)
        if not m:
            raise SpecParseError(f"bad parameter {chunk!r}", pos)
        if m.group(1) in params:
            raise SpecParseError(f"duplicate parameter {m.group(1)}", pos)
        params[m.group(1)] = int(m.group(2))
        pos += len(chunk) + 1
    return build_pair(fam, **params)


def format_spec(pair: HermitianPair) -> str:
    return f"{pair.family.value}:" + ",".join(f"{k}={v}" for k, v in pair.params)
