"""Bit-packed linear algebra over the two-element field.

Vectors are python ints; bit i is the coefficient of basis element i.
Row reduction pivots on the HIGHEST set bit of each relation, so each
relation rewrites its last generator in terms of earlier ones and the
canonical basis keeps the earliest generators (a + b leaves {a} and
sends b to a).
"""

from __future__ import annotations


def lowest_bit(v: int) -> int:
    """Index of the lowest set bit of a nonzero vector."""
    return (v & -v).bit_length() - 1


def highest_bit(v: int) -> int:
    """Index of the highest set bit of a nonzero vector."""
    return v.bit_length() - 1


def rref(rows: list[int]) -> tuple[list[int], list[int]]:
    """Reduced row-echelon form with highest-bit pivots.

    Returns (reduced nonzero rows sorted by pivot, pivot indices).
    """
    pivots: dict[int, int] = {}
    for row in rows:
        v = row
        while v:
            p = highest_bit(v)
            if p in pivots:
                v ^= pivots[p]
            else:
                pivots[p] = v
                break
    # back-substitute so each pivot occurs in exactly one row
    for p in sorted(pivots):
        for q in list(pivots):
            if q != p and (pivots[q] >> p) & 1:
                pivots[q] ^= pivots[p]
    cols = sorted(pivots)
    return [pivots[p] for p in cols], cols


def reduce_vector(v: int, rref_rows: list[int]) -> int:
    """Reduce v against rows in reduced echelon form."""
    for row in rref_rows:
        if (v >> highest_bit(row)) & 1:
            v ^= row
    return v


def rank(rows: list[int]) -> int:
    return len(rref(rows)[0])


class Reducer:
    """Incremental gaussian eliminator with combination tracking.

    add(v) returns (residual, combo): combo is the bitmask of previously
    added vector indices (plus the current one) whose sum is residual.
    A zero residual means v is dependent on what came before.
    """

    def __init__(self) -> None:
        self._pivots: dict[int, tuple[int, int]] = {}
        self._count = 0

    def add(self, v: int) -> tuple[int, int]:
        combo = 1 << self._count
        self._count += 1
        while v:
            p = lowest_bit(v)
            if p in self._pivots:
                pv, pc = self._pivots[p]
                v ^= pv
                combo ^= pc
            else:
                self._pivots[p] = (v, combo)
                break
        return v, combo

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def contains(self, v: int) -> bool:
        for p, (pv, _) in sorted(self._pivots.items()):
            if (v >> p) & 1:
                v ^= pv
        return v == 0

    def reduce(self, v: int) -> int:
        for p, (pv, _) in sorted(self._pivots.items()):
            if (v >> p) & 1:
                v ^= pv
        return v


def kernel_basis(columns: list[int]) -> list[int]:
    """Kernel of the linear map sending e_i to columns[i].

    Returns masks over the column indices whose combinations map to zero.
    """
    red = Reducer()
    kernel = []
    for c in columns:
        residual, combo = red.add(c)
        if residual == 0:
            kernel.append(combo)
    return kernel


def image_rank(columns: list[int]) -> int:
    return rank(list(columns))


def bits(v: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def from_bits(idxs) -> int:
    v = 0
    for i in idxs:
        v |= 1 << i
    return v
