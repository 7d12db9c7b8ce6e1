"""Dense GF(2) linear algebra on bit-packed matrices.

Rows are Python ints used as bitsets (column j = bit j), so elimination steps
are word-wide XORs.  Sized for the library's needs: at most 64 rows/columns.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph

MAX_DIM = 64


@dataclass(frozen=True)
class BitMatrix:
    """rows × cols matrix over GF(2); ``bits[i]`` holds row i, column j at bit j."""

    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if not (0 <= self.rows <= MAX_DIM and 0 <= self.cols <= MAX_DIM):
            raise ValueError(f"dimensions {self.rows}x{self.cols} exceed {MAX_DIM}")
        if len(self.bits) != self.rows:
            raise ValueError("row count does not match bits")
        mask = (1 << self.cols) - 1
        for i, r in enumerate(self.bits):
            if r & ~mask:
                raise ValueError(f"row {i} has bits outside 0..{self.cols - 1}")

    def get(self, i: int, j: int) -> int:
        return self.bits[i] >> j & 1

    @staticmethod
    def identity(k: int) -> "BitMatrix":
        return BitMatrix(k, k, tuple(1 << i for i in range(k)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "BitMatrix":
        return BitMatrix(rows, cols, (0,) * rows)

    @staticmethod
    def from_rows(rows_list: list[list[int]]) -> "BitMatrix":
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        bits = tuple(sum((v & 1) << j for j, v in enumerate(r)) for r in rows_list)
        return BitMatrix(rows, cols, bits)

    def transpose(self) -> "BitMatrix":
        bits = [0] * self.cols
        for i, r in enumerate(self.bits):
            while r:
                low = r & -r
                bits[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix(self.cols, self.rows, tuple(bits))

    def matmul(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.bits:
            acc = 0
            rr = r
            while rr:
                low = rr & -rr
                acc ^= other.bits[low.bit_length() - 1]
                rr ^= low
            out.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(out))


def _rank_of_rows(rows) -> int:
    """Rank of int-bitset rows (pivots keyed by lowest set bit)."""
    rank = 0
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            low = row & -row
            p = pivots.get(low)
            if p is None:
                pivots[low] = row
                rank += 1
                break
            row ^= p
    return rank


def rank(m: BitMatrix) -> int:
    return _rank_of_rows(list(m.bits))


def rref_with_transform(m: BitMatrix) -> tuple[BitMatrix, BitMatrix]:
    """Reduced row-echelon form R and invertible T with T·M = R over GF(2)."""
    rows = list(m.bits)
    trans = [1 << i for i in range(m.rows)]
    r = 0
    for col in range(m.cols):
        pivot = -1
        for i in range(r, m.rows):
            if rows[i] >> col & 1:
                pivot = i
                break
        if pivot < 0:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        trans[r], trans[pivot] = trans[pivot], trans[r]
        for i in range(m.rows):
            if i != r and rows[i] >> col & 1:
                rows[i] ^= rows[r]
                trans[i] ^= trans[r]
        r += 1
        if r == m.rows:
            break
    return (
        BitMatrix(m.rows, m.cols, tuple(rows)),
        BitMatrix(m.rows, m.rows, tuple(trans)),
    )


def cut_rank(g: Graph, subset: int) -> int:
    """GF(2) rank of the adjacency block with rows in ``subset`` (a vertex
    bitmask) and columns in the complement.  Symmetric in the bipartition and
    invariant under local complementation."""
    co = ((1 << g.n) - 1) & ~subset
    adj = g.adj
    # inline elimination: this is the database build's innermost loop
    rank_ = 0
    pivots: dict[int, int] = {}
    m = subset
    while m:
        lowv = m & -m
        m ^= lowv
        row = adj[lowv.bit_length() - 1] & co
        while row:
            low = row & -row
            p = pivots.get(low)
            if p is None:
                pivots[low] = row
                rank_ += 1
                break
            row ^= p
    return rank_


def cut_rank_subset(g: Graph, vertices: frozenset[int] | set[int]) -> int:
    """cut_rank with the subset given as a vertex set."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return cut_rank(g, mask)
