"""Fixed pairs of the Ext^1-orthogonality Galois connection.

The relation ``Ext^1(x, y) = 0`` on the ambient's indecomposables is a formal
context; its concepts are exactly the pairs ``(U, V)`` with ``V = U^perp`` and
``U = ^perp V``.  Extents are enumerated by a Close-by-One walk (the depth-first
form of Next-Closure) with a canonicity test, so every closed set is produced
once; optional bounds restrict to extents between ``lower`` and ``upper``.
"""

from __future__ import annotations

from .base import Subcat


class ExtContext:
    def __init__(self, ambient: Subcat):
        self.ambient = ambient
        cat = ambient.cat
        self.cat = cat
        self.elems = ambient.indices
        t = cat.ext_table(1)
        amb = ambient.bits
        self.row = {}  # x -> {y : Ext(x, y) = 0}
        self.col = {}  # y -> {x : Ext(x, y) = 0}
        for x in self.elems:
            self.row[x] = sum(1 << y for y in self.elems if t[x, y] == 0) & amb
        for y in self.elems:
            self.col[y] = sum(1 << x for x in self.elems if t[x, y] == 0) & amb

    def right(self, xbits: int) -> int:
        out = self.ambient.bits
        for x in self.elems:
            if xbits >> x & 1:
                out &= self.row[x]
        return out

    def left(self, ybits: int) -> int:
        out = self.ambient.bits
        for y in self.elems:
            if ybits >> y & 1:
                out &= self.col[y]
        return out

    def closure(self, xbits: int) -> int:
        return self.left(self.right(xbits))


def galois_enumerate(
    ambient: Subcat,
    lower: Subcat | None = None,
    upper: Subcat | None = None,
) -> list[tuple[Subcat, Subcat]]:
    """All fixed pairs (U, V) in ``ambient`` with ``lower <= U <= upper``.

    Output is sorted by the bitset of U (lexicographic on the indecomposable
    order), each pair verified to satisfy both fixed-point equations.
    """
    ctx = ExtContext(ambient)
    cat = ambient.cat
    lo = lower.bits if lower is not None else 0
    hi = upper.bits if upper is not None else ambient.bits
    hi &= ambient.bits
    elems = ctx.elems
    found: list[int] = []

    start = ctx.closure(lo)
    if start & ~hi:
        return []

    def walk(a: int, pos: int) -> None:
        found.append(a)
        for k in range(pos, len(elems)):
            i = elems[k]
            if a >> i & 1 or not hi >> i & 1:
                continue
            b = ctx.closure(a | (1 << i))
            mask = (1 << i) - 1
            if (b & mask) != (a & mask):
                continue
            if b & ~hi:
                continue
            walk(b, k + 1)

    walk(start, 0)
    out = []
    for a in sorted(found):
        v = ctx.right(a)
        if ctx.left(v) != a or ctx.right(a) != v:
            raise ArithmeticError("enumerated pair is not a fixed point")
        out.append((Subcat(cat, a), Subcat(cat, v)))
    return out


def naive_galois_pairs(ambient: Subcat) -> list[tuple[Subcat, Subcat]]:
    """Brute force over all member subsets; only for small ambients."""
    ctx = ExtContext(ambient)
    elems = ctx.elems
    seen = set()
    for mask in range(1 << len(elems)):
        bits = sum(1 << elems[k] for k in range(len(elems)) if mask >> k & 1)
        if ctx.closure(bits) == bits:
            seen.add(bits)
    return [(Subcat(ambient.cat, a), Subcat(ambient.cat, ctx.right(a))) for a in sorted(seen)]
