"""Linear Nakayama algebras kA_n/[x^m] and their indecomposable modules.

Orientation convention: arrows run 1 -> 2 -> ... -> n.  ``Interval(top, length)``
is the uniserial module supported on vertices ``top .. top+length-1`` with top
the simple at ``top`` and socle the simple at ``top+length-1``.  Projectives
are ``Interval(v, min(m, n-v+1))``; the simple at ``n`` is projective and the
simple at ``1`` is injective.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class NakayamaAlgebra:
    n: int
    m: int
    char: int = 2

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if self.m < 2:
            raise ValueError(f"need m >= 2, got {self.m}")
        if not _is_prime(self.char):
            raise ValueError(f"characteristic {self.char} is not prime")

    def max_length(self, top: int) -> int:
        return min(self.m, self.n - top + 1)

    def with_char(self, p: int) -> "NakayamaAlgebra":
        return NakayamaAlgebra(self.n, self.m, p)


@dataclass(frozen=True, order=True)
class Interval:
    top: int
    length: int

    @property
    def socle(self) -> int:
        return self.top + self.length - 1

    @property
    def support(self) -> range:
        return range(self.top, self.top + self.length)

    def valid_for(self, alg: NakayamaAlgebra) -> bool:
        return 1 <= self.top <= alg.n and 1 <= self.length <= alg.max_length(self.top)

    def is_projective(self, alg: NakayamaAlgebra) -> bool:
        return self.length == alg.max_length(self.top)

    def is_injective(self, alg: NakayamaAlgebra) -> bool:
        return self.top == max(1, self.socle - alg.m + 1)

    def dual(self, alg: NakayamaAlgebra) -> "Interval":
        """The interval of the vertex-reflected dual module."""
        return Interval(alg.n + 1 - self.socle, self.length)

    @property
    def label(self) -> str:
        return f"{self.top}:{self.length}"

    def __str__(self) -> str:
        return self.label


_LABEL = re.compile(r"^\(?\s*(\d+)\s*[:,]\s*(\d+)\s*\)?$")


def parse_interval(text: str) -> Interval:
    m = _LABEL.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse indecomposable label {text!r}; expected 'top:len'")
    return Interval(int(m.group(1)), int(m.group(2)))


def list_indecomposables(alg: NakayamaAlgebra) -> list[Interval]:
    """All indecomposables, ordered by (top, length)."""
    return [Interval(t, l) for t in range(1, alg.n + 1) for l in range(1, alg.max_length(t) + 1)]


@dataclass(frozen=True)
class Module:
    """Isomorphism class of a module: a multiset of intervals."""

    summands: tuple[tuple[Interval, int], ...] = field(default=())

    def __post_init__(self) -> None:
        for iv, k in self.summands:
            if k < 1:
                raise ValueError("multiplicities must be positive")

    @classmethod
    def from_counts(cls, counts) -> "Module":
        c = Counter()
        for iv, k in dict(counts).items():
            if k:
                c[iv] += k
        return cls(tuple(sorted(c.items())))

    @classmethod
    def of(cls, *intervals: Interval) -> "Module":
        return cls.from_counts(Counter(intervals))

    @classmethod
    def zero(cls) -> "Module":
        return cls(())

    def counts(self) -> Counter:
        return Counter(dict(self.summands))

    def __add__(self, other: "Module") -> "Module":
        return Module.from_counts(self.counts() + other.counts())

    def __iter__(self) -> Iterator[Interval]:
        for iv, k in self.summands:
            for _ in range(k):
                yield iv

    def __len__(self) -> int:
        return sum(k for _, k in self.summands)

    def __bool__(self) -> bool:
        return bool(self.summands)

    @property
    def distinct(self) -> list[Interval]:
        return [iv for iv, _ in self.summands]

    def dimvec(self, alg: NakayamaAlgebra) -> tuple[int, ...]:
        d = [0] * alg.n
        for iv, k in self.summands:
            for v in iv.support:
                d[v - 1] += k
        return tuple(d)

    def __str__(self) -> str:
        if not self.summands:
            return "0"
        return " + ".join(iv.label if k == 1 else f"{k}*{iv.label}" for iv, k in self.summands)


def direct_sum(mods: Iterable[Module]) -> Module:
    total = Counter()
    for mod in mods:
        total += mod.counts()
    return Module.from_counts(total)
