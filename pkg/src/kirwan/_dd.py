"""Double description: extreme rays of a pointed cone {y : H y >= 0}, exactly.

Used through :func:`vertices_and_rays`, which homogenizes a polyhedron
{x : A x <= b, E x = 0} and splits the rays of the cone over it into
vertices (last coordinate > 0) and recession directions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ._exact import dot, inverse, primitive, rref


def extreme_rays(H: Sequence[Sequence]) -> list[tuple[int, ...]]:
    H = [[Fraction(x) for x in h] for h in H]
    if not H:
        raise ValueError("empty constraint list")
    D = len(H[0])
    # initial simplicial cone from D independent rows
    chosen: list[int] = []
    for i, h in enumerate(H):
        if len(rref([H[j] for j in chosen] + [h])[1]) > len(chosen):
            chosen.append(i)
        if len(chosen) == D:
            break
    if len(chosen) < D:
        raise ValueError("cone is not pointed")
    inv = inverse([H[i] for i in chosen])
    rays = [primitive([inv[r][c] for r in range(D)]) for c in range(D)]
    done = list(chosen)
    for i in range(len(H)):
        if i in chosen:
            continue
        h = H[i]
        vals = [dot(h, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        zsets = [frozenset(j for j in done if dot(H[j], r) == 0) for r in rays]
        new = [rays[k] for k in pos + zer]
        for p in pos:
            for n in neg:
                common = zsets[p] & zsets[n]
                if len(common) < D - 2:
                    continue
                if any(k not in (p, n) and common <= zsets[k] for k in range(len(rays))):
                    continue
                comb = [vals[p] * a - vals[n] * b for a, b in zip(rays[n], rays[p])]
                new.append(primitive(comb))
        rays = list(dict.fromkeys(new))
        done.append(i)
        if not rays:
            break
    return rays


def vertices_and_rays(A: Sequence[Sequence], b: Sequence, E: Sequence[Sequence] = ()):
    """Vertices and extreme recession directions of {x : A x <= b, E x = 0}."""
    n = len(A[0]) if A else len(E[0])
    H = [[-Fraction(x) for x in a] + [Fraction(bi)] for a, bi in zip(A, b)]
    H.append([Fraction(0)] * n + [Fraction(1)])
    for e in E:
        H.append([Fraction(x) for x in e] + [Fraction(0)])
        H.append([-Fraction(x) for x in e] + [Fraction(0)])
    # put the equations first so they are part of the initial cone when possible
    H = H[len(A):] + H[:len(A)]
    verts, rays = [], []
    for r in extreme_rays(H):
        t = r[-1]
        if t > 0:
            verts.append(tuple(Fraction(x, t) for x in r[:-1]))
        else:
            rays.append(tuple(Fraction(x) for x in r[:-1]))
    return sorted(set(verts)), sorted(set(rays))
