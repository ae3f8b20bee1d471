"""Wedge bases: increasing index tuples, their lexicographic ranks and signs.

Indices are 0-based throughout the library; file formats shift to 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, Optional, Sequence, Tuple

Wedge = Tuple[int, ...]


def sort_with_sign(t: Sequence[int]) -> Optional[Tuple[Wedge, int]]:
    """Sort ``t`` and return the parity of the permutation, or None on repeats."""
    t = list(t)
    sign = 1
    # insertion sort; tuples are short
    for i in range(1, len(t)):
        j = i
        while j > 0 and t[j - 1] > t[j]:
            t[j - 1], t[j] = t[j], t[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and t[j - 1] == t[j]:
            return None
    return tuple(t), sign


def rank_of(w: Sequence[int], d: int) -> int:
    """Lexicographic position of the increasing tuple ``w`` among k-subsets of range(d)."""
    k = len(w)
    pos = 0
    prev = -1
    for i, x in enumerate(w):
        if not prev < x < d:
            raise ValueError(f"{tuple(w)} is not an increasing tuple in range({d})")
        for y in range(prev + 1, x):
            pos += comb(d - 1 - y, k - 1 - i)
        prev = x
    return pos


def unrank(pos: int, k: int, d: int) -> Wedge:
    total = comb(d, k)
    if not 0 <= pos < total:
        raise ValueError(f"position {pos} out of range for C({d},{k}) = {total}")
    out = []
    x = 0
    for i in range(k):
        while True:
            c = comb(d - 1 - x, k - 1 - i)
            if pos < c:
                break
            pos -= c
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


@lru_cache(maxsize=None)
def wedge_basis(k: int, d: int) -> Tuple[Wedge, ...]:
    """All increasing k-tuples from range(d) in lexicographic order."""
    if k < 0:
        return ()
    return tuple(itertools.combinations(range(d), k))


@lru_cache(maxsize=None)
def wedge_positions(k: int, d: int) -> Dict[Wedge, int]:
    return {w: i for i, w in enumerate(wedge_basis(k, d))}


def wedge_dim(k: int, d: int) -> int:
    return comb(d, k) if k >= 0 else 0


def normalize(t: Sequence[int], d: int) -> Optional[Tuple[int, int]]:
    """(position, sign) of the wedge of the basis vectors in ``t``; None if zero."""
    s = sort_with_sign(t)
    if s is None:
        return None
    w, sign = s
    return wedge_positions(len(w), d)[w], sign


@dataclass(frozen=True)
class Factor:
    """One tensor factor: ``Λ^k`` of a d-dimensional space (k=1 is the space itself)."""

    name: str
    k: int
    d: int

    @property
    def dim(self) -> int:
        return wedge_dim(self.k, self.d)

    def label(self, i: int):
        return wedge_basis(self.k, self.d)[i] if self.k != 1 else i


@dataclass(frozen=True)
class BasisDescriptor:
    """Ordered tensor product of factors, enumerated row-major (last factor fastest)."""

    factors: Tuple[Factor, ...]

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    @property
    def dim(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.dim
        return out

    @property
    def strides(self) -> Tuple[int, ...]:
        out = []
        s = 1
        for f in reversed(self.factors):
            out.append(s)
            s *= f.dim
        return tuple(reversed(out))

    def index(self, coords: Sequence[int]) -> int:
        return sum(c * s for c, s in zip(coords, self.strides))

    def coords(self, index: int) -> Tuple[int, ...]:
        out = []
        for s in self.strides:
            out.append(index // s)
            index %= s
        return tuple(out)

    def labels(self, index: int):
        return tuple(f.label(c) for f, c in zip(self.factors, self.coords(index)))

    def describe(self) -> str:
        parts = []
        for f in self.factors:
            parts.append(f.name if f.k == 1 else f"Λ^{f.k}{f.name}")
        return " ⊗ ".join(parts) if parts else "k"
