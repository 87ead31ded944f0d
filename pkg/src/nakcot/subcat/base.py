"""Summand-closed additive subcategories as bitsets over indecomposables."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..core.algebra import Interval, Module
from ..core.category import ModCat


class Certainty(str, Enum):
    EXHAUSTIVE = "exhaustive"
    PROBABILISTIC = "probabilistic"

    @staticmethod
    def combine(*levels: "Certainty") -> "Certainty":
        if any(c is Certainty.PROBABILISTIC for c in levels):
            return Certainty.PROBABILISTIC
        return Certainty.EXHAUSTIVE


@dataclass(frozen=True, eq=False)
class Subcat:
    """``add`` of a set of indecomposables of ``cat``."""

    cat: ModCat
    bits: int

    def __post_init__(self) -> None:
        if self.bits & ~self.cat.full_bits:
            raise ValueError("bits outside the indecomposable range")

    # -- constructors --------------------------------------------------
    @classmethod
    def of(cls, cat: ModCat, intervals) -> "Subcat":
        return cls(cat, cat.bits_of(intervals))

    @classmethod
    def full(cls, cat: ModCat) -> "Subcat":
        return cls(cat, cat.full_bits)

    @classmethod
    def zero(cls, cat: ModCat) -> "Subcat":
        return cls(cat, 0)

    @classmethod
    def projectives(cls, cat: ModCat) -> "Subcat":
        return cls(cat, cat.projective_bits)

    @classmethod
    def injectives(cls, cat: ModCat) -> "Subcat":
        return cls(cat, cat.injective_bits)

    # -- set algebra ---------------------------------------------------
    def _same(self, other: "Subcat") -> None:
        if other.cat is not self.cat:
            raise ValueError("subcategories of different categories")

    def __or__(self, other: "Subcat") -> "Subcat":
        self._same(other)
        return Subcat(self.cat, self.bits | other.bits)

    def __and__(self, other: "Subcat") -> "Subcat":
        self._same(other)
        return Subcat(self.cat, self.bits & other.bits)

    def __sub__(self, other: "Subcat") -> "Subcat":
        self._same(other)
        return Subcat(self.cat, self.bits & ~other.bits)

    def __le__(self, other: "Subcat") -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "Subcat") -> bool:
        return self <= other and self.bits != other.bits

    def __eq__(self, other) -> bool:
        return isinstance(other, Subcat) and other.cat is self.cat and other.bits == self.bits

    def __hash__(self) -> int:
        return hash((id(self.cat), self.bits))

    def __contains__(self, x) -> bool:
        if isinstance(x, Interval):
            return bool(self.bits >> self.cat.idx(x) & 1)
        if isinstance(x, Module):
            return all(self.bits >> self.cat.idx(iv) & 1 for iv in x.distinct)
        raise TypeError(f"cannot test membership of {type(x).__name__}")

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __iter__(self):
        return iter(self.members)

    def __bool__(self) -> bool:
        return self.bits != 0

    @property
    def members(self) -> list[Interval]:
        return self.cat.intervals_of(self.bits)

    @property
    def indices(self) -> list[int]:
        return [k for k in range(self.cat.size) if self.bits >> k & 1]

    @property
    def labels(self) -> list[str]:
        return [iv.label for iv in self.members]

    def __repr__(self) -> str:
        return "add{" + ", ".join(self.labels) + "}"


def _ext_masks(cat: ModCat, degree: int) -> tuple[list[int], list[int]]:
    """Per indecomposable x: bits y with Ext^degree(x, y) != 0, and bits y with Ext^degree(y, x) != 0."""
    cache = cat.__dict__.setdefault("_ext_masks", {})
    hit = cache.get(degree)
    if hit is None:
        t = cat.ext_table(degree)
        n = cat.size
        rows = [sum(1 << y for y in range(n) if t[x, y]) for x in range(n)]
        cols = [sum(1 << y for y in range(n) if t[y, x]) for x in range(n)]
        hit = cache[degree] = (rows, cols)
    return hit


def perp(s: Subcat, side: str, ambient: Subcat | None = None, degree: int = 1) -> Subcat:
    """``right``: {X in ambient : Ext^degree(S, X) = 0}; ``left``: {X : Ext^degree(X, S) = 0}."""
    cat = s.cat
    amb = ambient.bits if ambient is not None else cat.full_bits
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    rows, cols = _ext_masks(cat, degree)
    masks = rows if side == "right" else cols
    hit = 0
    for x in s.indices:
        hit |= masks[x]
    return Subcat(cat, amb & ~hit)


def right_perp(s: Subcat, ambient: Subcat | None = None, degree: int = 1) -> Subcat:
    return perp(s, "right", ambient, degree)


def left_perp(s: Subcat, ambient: Subcat | None = None, degree: int = 1) -> Subcat:
    return perp(s, "left", ambient, degree)
