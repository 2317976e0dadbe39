"""Exact two-phase simplex with Bland's rule.

Standard form: maximize c.x subject to A x = b, x >= 0.  Helpers below turn
inequality systems with free variables into that form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


@dataclass
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(T: list[list[Fraction]], r: int, c: int) -> None:
    inv = 1 / T[r][c]
    T[r] = [v * inv for v in T[r]]
    pr = T[r]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, pr)]


def _iterate(T, basis, ncols) -> str:
    """Row 0 of T holds reduced costs (negative = improving).  Bland's rule."""
    while True:
        enter = next((j for j in range(ncols) if T[0][j] < 0), None)
        if enter is None:
            return OPTIMAL
        best = None
        for i in range(1, len(T)):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i - 1] < basis[best[1] - 1]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        r = best[1]
        _pivot(T, r, enter)
        basis[r - 1] = enter


def simplex(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPResult:
    m = len(A)
    n = len(c)
    rows = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        rows.append(row + [Fraction(int(i == k)) for k in range(m)] + [rhs])
    # phase 1: maximize -sum(artificials)
    obj = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    for row in rows:
        obj = [o - v for o, v in zip(obj, row)]
    T = [obj] + rows
    basis = [n + i for i in range(m)]
    _iterate(T, basis, n + m)
    if T[0][-1] != 0:
        return LPResult(INFEASIBLE)
    # drive artificials out of the basis, dropping redundant equality rows
    i = 0
    while i < len(basis):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i + 1][j] != 0), None)
            if col is None:
                del T[i + 1]
                del basis[i]
                continue
            _pivot(T, i + 1, col)
            basis[i] = col
        i += 1
    T = [row[:n] + [row[-1]] for row in T]
    cost = [Fraction(x) for x in c]
    obj = [-x for x in cost] + [Fraction(0)]
    for i, bj in enumerate(basis):
        if cost[bj] != 0:
            obj = [o + cost[bj] * v for o, v in zip(obj, T[i + 1])]
    T[0] = obj
    status = _iterate(T, basis, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        x[bj] = T[i + 1][-1]
    return LPResult(OPTIMAL, T[0][-1], tuple(x))


def maximize_free(c: Sequence, A_ub: Sequence[Sequence], b_ub: Sequence,
                  A_eq: Sequence[Sequence] = (), b_eq: Sequence = ()) -> LPResult:
    """maximize c.x over free x with A_ub x <= b_ub and A_eq x = b_eq."""
    n = len(c)
    m = len(A_ub)
    A, b = [], []
    for i, row in enumerate(A_ub):
        A.append(list(row) + [-x for x in row] + [int(k == i) for k in range(m)])
        b.append(b_ub[i])
    for row, rhs in zip(A_eq, b_eq):
        A.append(list(row) + [-x for x in row] + [0] * m)
        b.append(rhs)
    cc = list(c) + [-x for x in c] + [0] * m
    res = simplex(A, b, cc)
    if res.status != OPTIMAL:
        return res
    x = tuple(res.x[i] - res.x[n + i] for i in range(n))
    return LPResult(OPTIMAL, res.value, x)


def in_cone(generators: Sequence[Sequence], v: Sequence) -> bool:
    """Is v a nonnegative combination of the generators?"""
    if not generators:
        return all(Fraction(x) == 0 for x in v)
    A = [[g[i] for g in generators] for i in range(len(v))]
    return simplex(A, list(v), [0] * len(generators)).status == OPTIMAL
