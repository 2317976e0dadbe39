"""Cohomology of the flag variety K_C/B in the Schubert basis.

Degree-2 multiplication is the Chevalley rule

    Theta(mu) . s_w = sum over compact alpha > 0 with l(w s_alpha) = l(w) + 1
                      of <alpha^vee, mu> s_{w s_alpha}.

General cup products use the fact that the rational cohomology is generated
in degree 2: every s_u of degree d is written (once, exactly) as a rational
combination of monomials D_{i1} ... D_{id} . 1, where D_i is multiplication
by s_{s_i}.  Multiplying by s_u is then the same combination of Chevalley
operators applied to the other factor.  Central directions of mu pair to zero
with every compact coroot, so they drop out on their own.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ._exact import inverse, rref, solve
from .rootdata import coroot, pairing
from .weyl import WeylElt, WeylGroup


def _norm(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


class CohClass:
    """Finite combination of Schubert classes, keyed by Weyl group element."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[WeylElt, object] | None = None):
        self.terms = {w: _norm(c) for w, c in (terms or {}).items() if c != 0}

    @property
    def degrees(self) -> set[int]:
        return {w.length for w in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int | None:
        """Common degree (None for the zero class); raises on mixed classes."""
        d = self.degrees
        if len(d) > 1:
            raise ValueError("mixed-degree class")
        return next(iter(d)) if d else None

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def coeff(self, w: WeylElt) -> object:
        return self.terms.get(w, 0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, CohClass) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: CohClass) -> CohClass:
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return CohClass(t)

    def __sub__(self, other: CohClass) -> CohClass:
        return self + (-1) * other

    def __rmul__(self, k) -> CohClass:
        return CohClass({w: k * c for w, c in self.terms.items()})

    def __repr__(self) -> str:
        return "CohClass(" + ", ".join(f"{c}*{list(w.images)}" for w, c in self.terms.items()) + ")"


class SchubertRing:
    def __init__(self, group: WeylGroup):
        self.group = group
        pair = group.pair
        self.coroots = [coroot(pair, a) for a in pair.compact_pos_roots]
        self.refl = [group.reflection(a) for a in pair.compact_pos_roots]
        simple_co = [coroot(pair, a) for a in pair.simple_compact_roots]
        # coefficients of each positive coroot in the simple coroots
        cols = [list(r) for r in zip(*simple_co)] if simple_co else []
        self._expansion = []
        for cv in self.coroots:
            c = solve(cols, cv)
            if c is None or any(x < 0 or x.denominator != 1 for x in c):
                raise ArithmeticError("coroot outside the simple coroot monoid")
            self._expansion.append([int(x) for x in c])
        self._up: dict[WeylElt, list[tuple[int, WeylElt]]] = {}
        for w in group.elements:
            ups = []
            for k, s in enumerate(self.refl):
                v = group.mult(w, s)
                if v.length == w.length + 1:
                    ups.append((k, v))
            self._up[w] = ups
        nsimple = len(simple_co)
        self._D: list[dict[WeylElt, dict[WeylElt, int]]] = []
        for i in range(nsimple):
            table = {}
            for w, ups in self._up.items():
                row = {}
                for k, v in ups:
                    c = self._expansion[k][i]
                    if c:
                        row[v] = row.get(v, 0) + c
                table[w] = row
            self._D.append(table)
        self._by_degree: dict[int, list[WeylElt]] = {}
        for w in group.elements:
            self._by_degree.setdefault(w.length, []).append(w)
        self._tables: dict[int, tuple[list[tuple[int, ...]], dict[WeylElt, list[Fraction]]]] = {}
        self.one = CohClass({group.identity: 1})
        self._vectors: dict[tuple[int, ...], CohClass] = {(): self.one}
        self.top = group.w0.length

    # -- basic classes
    def sigma(self, w: WeylElt | str) -> CohClass:
        if isinstance(w, str):
            w = self.group.parse(w)
        return CohClass({w: 1})

    @property
    def point(self) -> CohClass:
        return self.sigma(self.group.w0)

    def theta(self, mu: Sequence) -> CohClass:
        return self.chevalley_mult(mu, self.one)

    def chevalley_mult(self, mu: Sequence, c: CohClass) -> CohClass:
        vals = [pairing(cv, self.group.pair.canonical(mu)) for cv in self.coroots]
        out: dict[WeylElt, object] = {}
        for w, cw in c.terms.items():
            for k, v in self._up[w]:
                if vals[k]:
                    out[v] = out.get(v, 0) + cw * vals[k]
        return CohClass(out)

    def _apply_simple(self, i: int, c: CohClass) -> CohClass:
        out: dict[WeylElt, object] = {}
        table = self._D[i]
        for w, cw in c.terms.items():
            for v, k in table[w].items():
                out[v] = out.get(v, 0) + cw * k
        return CohClass(out)

    # -- degree tables
    def _table(self, d: int):
        """Monomials spanning degree d and the expansion of each s_u in them."""
        if d in self._tables:
            return self._tables[d]
        basis = self._by_degree.get(d, [])
        if d == 0:
            tab = ([()], {self.group.identity: [Fraction(1)]})
            self._tables[0] = tab
            return tab
        prev_monos, _ = self._table(d - 1)
        index = {w: j for j, w in enumerate(basis)}
        chosen: list[tuple[int, ...]] = []
        rows: list[list[Fraction]] = []
        seen = set()
        for m in prev_monos:
            for i in range(len(self._D)):
                key = tuple(sorted(m + (i,)))
                if key in seen:
                    continue
                seen.add(key)
                vec_c = self._apply_simple(i, self._vectors[m])
                row = [Fraction(0)] * len(basis)
                for w, c in vec_c.terms.items():
                    row[index[w]] = Fraction(c)
                if len(rref(rows + [row])[1]) > len(rows):
                    rows.append(row)
                    chosen.append(key)
                    self._vectors[key] = vec_c
                if len(rows) == len(basis):
                    break
            if len(rows) == len(basis):
                break
        if len(rows) != len(basis):
            raise ArithmeticError(f"degree-2 classes do not generate degree {d}")
        # rows[j] = coordinates of monomial j; we need s_u = sum_j x_j mono_j,
        # i.e. x = e_u . rows^{-1}
        inv = inverse(rows)
        expansion = {w: [inv[index[w]][j] for j in range(len(rows))] for w in basis}
        self._tables[d] = (chosen, expansion)
        return self._tables[d]

    def cup(self, a: CohClass, b: CohClass) -> CohClass:
        if not a.is_homogeneous or not b.is_homogeneous:
            raise ValueError("cup requires homogeneous classes")
        if not a or not b:
            return CohClass()
        if a.degree > b.degree:
            a, b = b, a
        if a.degree + b.degree > self.top:
            return CohClass()
        monos, expansion = self._table(a.degree)
        coef = [Fraction(0)] * len(monos)
        for u, cu in a.terms.items():
            for j, x in enumerate(expansion[u]):
                coef[j] += cu * x
        memo: dict[tuple[int, ...], CohClass] = {(): b}

        def apply(m: tuple[int, ...]) -> CohClass:
            if m not in memo:
                memo[m] = self._apply_simple(m[-1], apply(m[:-1]))
            return memo[m]

        out = CohClass()
        for m, x in zip(monos, coef):
            if x:
                out = out + x * apply(m)
        if a.is_integral and b.is_integral and not out.is_integral:
            raise ArithmeticError("non-integral structure constant")
        return out

    def product(self, classes: Iterable[CohClass]) -> CohClass:
        out = self.one
        for c in classes:
            out = self.cup(out, c)
        return out

    def power(self, c: CohClass, k: int) -> CohClass:
        return self.product([c] * k)

    # -- distinguished classes
    def j_star_point(self, lam: Sequence[int]) -> CohClass:
        _, w_lam = self.group.stabilizer(lam)
        return self.sigma(self.group.mult(self.group.w0, w_lam))

    def poincare_coeff(self, c: CohClass) -> object:
        return c.coeff(self.group.w0)

    # -- printing and parsing
    def format(self, c: CohClass) -> str:
        if not c:
            return "0"
        items = sorted(c.terms.items(), key=lambda t: (t[0].length, self.group.word(t[0])))
        return " + ".join(f"{v}*s[{self.group.format(w)}]" for w, v in items)

    def evaluate(self, expr: str) -> CohClass:
        """Evaluate a product like 's[s1].theta(2,0).s[s2*s1]'.

        Factors are separated by '.', and a leading integer multiplies the
        result ('3.s[s1]' is 3 s_{s1}).
        """
        factors = _split_factors(expr)
        out = self.one
        for f in factors:
            if f.startswith("s[") and f.endswith("]"):
                out = self.cup(out, self.sigma(f[2:-1]))
            elif f.startswith("theta(") and f.endswith(")"):
                mu = [Fraction(x) for x in f[6:-1].split(",")]
                out = self.chevalley_mult(mu, out)
            elif f.lstrip("-").isdigit():
                out = int(f) * out
            else:
                raise ValueError(f"cannot parse factor {f!r}")
        return out


def _split_factors(expr: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in expr.replace(" ", ""):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "." and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if cur:
        out.append(cur)
    if not out:
        raise ValueError("empty expression")
    return out
