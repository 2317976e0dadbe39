"""Weyl group W(T, K) as signed permutations of the coordinate model.

An element is stored by its images of the basis vectors: ``images[i] = s*(j+1)``
means w(e_i) = s e_j.  Composition is ``mult(u, v) = u o v`` (apply v first),
and words are read the same way, so "s2*s1" is s2 o s1.  Simple reflections
are numbered 1, 2, ... in the order of ``pair.simple_compact_roots`` (for
SU(p, q) the U(p) factor comes first).
"""

from __future__ import annotations

import json
import os
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ._exact import dot, vec
from .rootdata import HermitianPair, is_dominant_coweight

DEFAULT_MAX_WEYL = 10**6


class WeylBoundError(RuntimeError):
    pass


@dataclass(frozen=True)
class WeylElt:
    images: tuple[int, ...]
    length: int = field(compare=False)

    def act(self, v: Sequence) -> tuple:
        out = [None] * len(self.images)
        for i, im in enumerate(self.images):
            j = abs(im) - 1
            out[j] = v[i] if im > 0 else -v[i]
        return tuple(out)

    def __repr__(self) -> str:
        return f"WeylElt({list(self.images)}, l={self.length})"


def _reflection_images(alpha: Sequence[Fraction]) -> tuple[int, ...]:
    n = len(alpha)
    n2 = dot(alpha, alpha)
    imgs = []
    for i in range(n):
        e = [Fraction(int(i == j)) for j in range(n)]
        c = 2 * alpha[i] / n2
        img = [x - c * a for x, a in zip(e, alpha)]
        nz = [(j, x) for j, x in enumerate(img) if x != 0]
        if len(nz) != 1 or abs(nz[0][1]) != 1:
            raise ValueError("reflection is not a signed permutation")
        j, x = nz[0]
        imgs.append((j + 1) * int(x))
    return tuple(imgs)


def _compose(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for im in v:
        j = abs(im) - 1
        x = u[j]
        out.append(x if im > 0 else -x)
    return tuple(out)


class WeylGroup:
    """Complete enumeration of W, built by closure under simple reflections."""

    def __init__(self, pair: HermitianPair, max_size: int | None = None):
        self.pair = pair
        if max_size is None:
            max_size = int(os.environ.get("KIRWAN_MAX_WEYL", DEFAULT_MAX_WEYL))
        self._pos = frozenset(pair.compact_pos_roots)
        self.simple_images = [_reflection_images(a) for a in pair.simple_compact_roots]
        n = pair.ncoords
        ident = tuple(range(1, n + 1))
        seen = {ident}
        order = [ident]
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            for s in self.simple_images:
                y = _compose(x, s)
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    if len(order) > max_size:
                        raise WeylBoundError(
                            f"|W| exceeds bound {max_size} (set KIRWAN_MAX_WEYL to raise it)")
                    queue.append(y)
        self._by_images = {im: WeylElt(im, self._count_inversions(im)) for im in order}
        self.identity = self._by_images[ident]
        self.simple = [self._by_images[s] for s in self.simple_images]
        self.elements = sorted(self._by_images.values(),
                               key=lambda w: (w.length, self.word(w)))
        self.w0 = max(self.elements, key=lambda w: w.length)

    def _count_inversions(self, images: tuple[int, ...]) -> int:
        w = WeylElt(images, 0)
        return sum(1 for a in self._pos if w.act(a) not in self._pos)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def elt(self, images: Iterable[int]) -> WeylElt:
        return self._by_images[tuple(images)]

    # -- group operations
    def mult(self, u: WeylElt, v: WeylElt) -> WeylElt:
        return self._by_images[_compose(u.images, v.images)]

    def inverse(self, w: WeylElt) -> WeylElt:
        out = [0] * len(w.images)
        for i, im in enumerate(w.images):
            out[abs(im) - 1] = (i + 1) if im > 0 else -(i + 1)
        return self._by_images[tuple(out)]

    def reflection(self, alpha: Sequence) -> WeylElt:
        return self._by_images[_reflection_images(vec(alpha))]

    def act(self, w: WeylElt, mu: Sequence) -> tuple:
        """Action on weights (exact rationals)."""
        return tuple(Fraction(x) for x in w.act(tuple(mu)))

    def act_co(self, w: WeylElt, lam: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(x) for x in w.act(tuple(lam)))

    def length(self, w: WeylElt) -> int:
        return w.length

    def longest(self) -> WeylElt:
        return self.w0

    def from_word(self, word: Sequence[int]) -> WeylElt:
        w = self.identity
        for i in word:
            w = self.mult(w, self.simple[i - 1])
        return w

    # -- words and printing
    @cached_property
    def _words(self) -> dict[tuple[int, ...], tuple[int, ...]]:
        words = {self.identity.images: ()}
        for w in sorted(self._by_images.values(), key=lambda x: x.length):
            if w.length == 0:
                continue
            for i, s in enumerate(self.simple, start=1):
                u = self._by_images[_compose(s.images, w.images)]
                if u.length < w.length:
                    words[w.images] = (i,) + words[u.images]
                    break
        return words

    def word(self, w: WeylElt) -> tuple[int, ...]:
        """Reduced word, chosen by peeling the smallest left descent."""
        return self._words[w.images]

    def format(self, w: WeylElt) -> str:
        wd = self.word(w)
        return "*".join(f"s{i}" for i in wd) if wd else "id"

    def parse(self, text: str) -> WeylElt:
        """Accept 's1*s3*s2', 'id', or a signed image array like '[2,-1]'."""
        t = text.strip()
        if t.startswith("["):
            images = tuple(int(x) for x in json.loads(t))
            if images not in self._by_images:
                raise ValueError(f"{t} is not an element of W")
            return self._by_images[images]
        if t in ("id", "e", "1", ""):
            return self.identity
        word = []
        for tok in t.split("*"):
            m = re.fullmatch(r"s(\d+)", tok.strip())
            if not m or not 1 <= int(m.group(1)) <= len(self.simple):
                raise ValueError(f"bad Weyl word token {tok!r}")
            word.append(int(m.group(1)))
        return self.from_word(word)

    # -- parabolic machinery
    def stabilizer(self, lam: Sequence) -> tuple[list[WeylElt], WeylElt]:
        lam = tuple(lam)
        sub = [w for w in self.elements if w.act(lam) == lam]
        return sub, max(sub, key=lambda w: w.length)

    def max_coset_reps(self, lam: Sequence[int]) -> list[WeylElt]:
        """Longest representatives of the cosets w W_lam, ordered by (length, word)."""
        if not is_dominant_coweight(self.pair, lam):
            raise ValueError(f"{tuple(lam)} is not dominant")
        best: dict[tuple, WeylElt] = {}
        for w in self.elements:
            key = w.act(tuple(lam))
            if key not in best or w.length > best[key].length:
                best[key] = w
        return sorted(best.values(), key=lambda w: (w.length, self.word(w)))


def enumerate_group(pair: HermitianPair, max_size: int | None = None) -> WeylGroup:
    return WeylGroup(pair, max_size)
