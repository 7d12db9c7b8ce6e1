"""LC-class invariants: rank indexes, Schmidt-measure bounds, and the
stabilizer support-weight enumerator used as a classification fingerprint.

All three are invariant under local complementation: cut ranks because LC
acts by elementary GF(2) row operations across any bipartition, the weight
enumerator because single-qubit conjugation preserves Pauli supports, and the
Schmidt bracket because it is built from the other two plus an orbit-wide
minimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .gf2 import cut_rank
from .graphs import Graph
from .orbits import IsoOrbit


@dataclass(frozen=True)
class RankIndexProfile:
    """For each split size i in 2..n//2, the vector (m_i, ..., m_1) where m_r
    counts vertex subsets of size i with cut rank r.  Splits into equal halves
    are counted once per unordered bipartition."""

    n: int
    vectors: tuple[tuple[int, ...], ...]

    def vector(self, i: int) -> tuple[int, ...]:
        return self.vectors[i - 2]

    @property
    def split_sizes(self) -> range:
        return range(2, self.n // 2 + 1)


@dataclass(frozen=True)
class SchmidtBounds:
    lower: int
    upper: int


@dataclass(frozen=True)
class WeightEnumerator:
    """counts[c] = number of stabilizer-group elements with support size c."""

    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts) - 1


def rank_indexes(g: Graph) -> RankIndexProfile:
    n = g.n
    vectors = []
    for i in range(2, n // 2 + 1):
        m = [0] * (i + 1)
        if 2 * i == n:
            # unordered bipartitions: fix vertex 0 on one side
            subsets = (s + (0,) for s in combinations(range(1, n), i - 1))
        else:
            subsets = combinations(range(n), i)
        for subset in subsets:
            mask = 0
            for v in subset:
                mask |= 1 << v
            m[cut_rank(g, mask)] += 1
        vectors.append(tuple(m[r] for r in range(i, 0, -1)))
    return RankIndexProfile(n, tuple(vectors))


def max_cut_rank(g: Graph) -> int:
    """Largest cut rank over all bipartitions (the maximal Schmidt rank)."""
    n = g.n
    best = 0
    for i in range(1, n // 2 + 1):
        if 2 * i == n:
            subsets = (s + (0,) for s in combinations(range(1, n), i - 1))
        else:
            subsets = combinations(range(n), i)
        for subset in subsets:
            mask = 0
            for v in subset:
                mask |= 1 << v
            r = cut_rank(g, mask)
            if r > best:
                best = r
    return best


def min_vertex_cover(g: Graph) -> int:
    """Exact minimum vertex cover by branch and bound on a max-degree vertex."""
    best = [g.n]

    def strip(rows: list[int], drop: int) -> list[int]:
        out = list(rows)
        for v in range(len(out)):
            if drop >> v & 1:
                out[v] = 0
            else:
                out[v] &= ~drop
        return out

    def rec(rows: list[int], k: int) -> None:
        if k >= best[0]:
            return
        dmax, v = 0, -1
        for u, row in enumerate(rows):
            d = row.bit_count()
            if d > dmax:
                dmax, v = d, u
        if dmax == 0:
            best[0] = k
            return
        if dmax == 1:
            k += sum(row.bit_count() for row in rows) // 2
            if k < best[0]:
                best[0] = k
            return
        # either v is in the cover, or all of its neighbors are
        rec(strip(rows, 1 << v), k + 1)
        nbrs = rows[v]
        rec(strip(rows, nbrs), k + nbrs.bit_count())

    rec(list(g.adj), 0)
    return best[0]


def weight_enumerator(g: Graph) -> WeightEnumerator:
    """Support-size histogram of all 2^n products of the generators
    K_a = X_a Z_N(a), walked in Gray-code order."""
    n = g.n
    counts = [0] * (n + 1)
    counts[0] = 1
    adj = g.adj
    x = z = 0
    prev = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        flip = (gray ^ prev).bit_length() - 1
        prev = gray
        x ^= 1 << flip
        z ^= adj[flip]
        counts[(x | z).bit_count()] += 1
    return WeightEnumerator(tuple(counts))


def schmidt_bounds(orbit: IsoOrbit) -> SchmidtBounds:
    """lower = maximal Schmidt rank (any member; LC-invariant), upper =
    minimum vertex cover over the orbit (Pauli persistency)."""
    lower = max_cut_rank(orbit.source)
    upper = min(min_vertex_cover(m) for m in orbit.members)
    assert lower <= upper, "Schmidt bracket inverted (theory violation)"
    return SchmidtBounds(lower, upper)
