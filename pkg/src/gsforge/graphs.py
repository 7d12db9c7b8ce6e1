"""Simple undirected graphs on up to 16 labeled vertices.

A graph is stored as one neighbor bitmask per vertex, so edge toggles,
neighborhood queries and set operations are single machine-word operations.
This module provides the graph values themselves, local complementation,
canonical labeling (partition refinement + backtracking with automorphism
pruning), connected-graph census generation, and graph6 / edge-list I/O.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import CapabilityError, GraphFormatError

MAX_VERTICES = 16
_GENERATOR_MAX_N = 10


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adj[v]`` is the neighbor bitmask of vertex v."""

    adj: tuple[int, ...]

    def __post_init__(self):
        n = len(self.adj)
        if not 1 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        full = (1 << n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"adjacency row {v} has bits outside 0..{n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for v in range(n):
            for w in range(v + 1, n):
                if (self.adj[v] >> w & 1) != (self.adj[w] >> v & 1):
                    raise ValueError(f"asymmetric adjacency at ({v},{w})")

    @property
    def n(self) -> int:
        return len(self.adj)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(_bits(self.adj[v]))

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            rest = self.adj[v] >> (v + 1)
            w = v + 1
            while rest:
                if rest & 1:
                    yield (v, w)
                rest >>= 1
                w += 1

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges())})"


@dataclass(frozen=True)
class VertexPermutation:
    """Bijection on {0..n-1}; ``mapping[v]`` is the image of vertex v."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError("not a permutation")

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    def compose(self, other: "VertexPermutation") -> "VertexPermutation":
        """Return self∘other, i.e. apply ``other`` first."""
        return VertexPermutation(tuple(self.mapping[other.mapping[v]] for v in range(self.n)))

    def inverse(self) -> "VertexPermutation":
        inv = [0] * self.n
        for v, p in enumerate(self.mapping):
            inv[p] = v
        return VertexPermutation(tuple(inv))

    @staticmethod
    def identity(n: int) -> "VertexPermutation":
        return VertexPermutation(tuple(range(n)))

    def apply(self, g: Graph) -> Graph:
        """Relabel ``g``: edge (i,j) becomes (mapping[i], mapping[j])."""
        return Graph(_relabel_rows(g.adj, self.mapping))


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    adj = [0] * n
    for i, j in edges:
        if i == j:
            raise ValueError(f"self-loop ({i},{j})")
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return Graph(tuple(adj))


def empty_graph(n: int) -> Graph:
    return Graph((0,) * n)


def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(tuple(full ^ (1 << v) for v in range(n)))


def star_graph(n: int, center: int = 0) -> Graph:
    return from_edges(n, [(center, v) for v in range(n) if v != center])


# ---------------------------------------------------------------------------
# Elementary operations
# ---------------------------------------------------------------------------

def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _lc_adj(adj: tuple[int, ...], a: int) -> tuple[int, ...]:
    nbrs = adj[a]
    out = list(adj)
    m = nbrs
    while m:
        low = m & -m
        out[low.bit_length() - 1] ^= nbrs & ~low
        m ^= low
    return tuple(out)


def local_complement(g: Graph, a: int) -> Graph:
    """Toggle every edge between two neighbors of ``a``; everything else fixed."""
    if not 0 <= a < g.n:
        raise ValueError(f"vertex {a} out of range for n={g.n}")
    return Graph(_lc_adj(g.adj, a))


def neighborhood(g: Graph, a: int) -> frozenset[int]:
    if not 0 <= a < g.n:
        raise ValueError(f"vertex {a} out of range for n={g.n}")
    return g.neighbors(a)


def max_degree(g: Graph) -> int:
    return max(row.bit_count() for row in g.adj)


def is_connected(g: Graph) -> bool:
    full = (1 << g.n) - 1
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        for v in _bits(frontier):
            reach |= g.adj[v]
        frontier = reach & ~seen
        seen |= frontier
    return seen == full


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex lists of the connected components, each sorted, in order of least vertex."""
    unseen = (1 << g.n) - 1
    comps = []
    while unseen:
        start = unseen & -unseen
        seen = start
        frontier = start
        while frontier:
            reach = 0
            for v in _bits(frontier):
                reach |= g.adj[v]
            frontier = reach & ~seen
            seen |= frontier
        comps.append(list(_bits(seen)))
        unseen &= ~seen
    return comps


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in _bits(g.adj[v]):
                if color[w] < 0:
                    color[w] = color[v] ^ 1
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def induced_subgraph(g: Graph, vertices: list[int]) -> Graph:
    """Subgraph on ``vertices``, relabeled 0..k-1 in the given order."""
    pos = {v: i for i, v in enumerate(vertices)}
    adj = [0] * len(vertices)
    for v in vertices:
        for w in _bits(g.adj[v]):
            if w in pos:
                adj[pos[v]] |= 1 << pos[w]
    return Graph(tuple(adj))


def _relabel_rows(adj: tuple[int, ...], perm) -> tuple[int, ...]:
    n = len(adj)
    rows = [0] * n
    for v in range(n):
        row = 0
        m = adj[v]
        while m:
            low = m & -m
            row |= 1 << perm[low.bit_length() - 1]
            m ^= low
        rows[perm[v]] = row
    return tuple(rows)


def adjacency_key(g: Graph) -> int:
    """Upper-triangle adjacency bits packed with pair (0,1) most significant.

    Total order used for every "lexicographically least" tie-break in the
    library; equal keys on equal-n graphs means equal graphs.
    """
    key = 0
    adj = g.adj
    for i in range(g.n):
        for j in range(i + 1, g.n):
            key = key << 1 | (adj[i] >> j & 1)
    return key


# ---------------------------------------------------------------------------
# Canonical labeling
# ---------------------------------------------------------------------------
#
# Ordered-partition refinement (degree, then neighbor-color multiset to a
# fixpoint), then individualization with backtracking.  Discovered
# automorphisms prune target-cell candidates that fix the individualized
# prefix pointwise; the canonical labeled graph is the one whose packed
# adjacency key is least over the surviving leaves.

def _refine(adj: tuple[int, ...], n: int, cells: list[int]) -> list[int]:
    while True:
        split = False
        new_cells: list[int] = []
        for cell in cells:
            if cell & (cell - 1) == 0:
                new_cells.append(cell)
                continue
            groups: dict[int, int] = {}
            for v in _bits(cell):
                row = adj[v]
                sig = 0
                for c in cells:
                    sig = sig << 5 | (row & c).bit_count()
                if sig in groups:
                    groups[sig] |= 1 << v
                else:
                    groups[sig] = 1 << v
            if len(groups) > 1:
                split = True
                for sig in sorted(groups):
                    new_cells.append(groups[sig])
            else:
                new_cells.append(cell)
        cells = new_cells
        if not split:
            return cells


def _canonical_search(adj: tuple[int, ...], n: int):
    """Return (best_key, best_perm, automorphism generators)."""
    best = [None, None]  # packed key, perm (vertex -> position)
    autos: list[tuple[int, ...]] = []

    def leaf_key(perm):
        key = 0
        inv = [0] * n
        for v, p in enumerate(perm):
            inv[p] = v
        for i in range(n):
            row = adj[inv[i]]
            for j in range(i + 1, n):
                key = key << 1 | (row >> inv[j] & 1)
        return key

    def recurse(cells: list[int], prefix: tuple[int, ...]):
        cells = _refine(adj, n, cells)
        target = -1
        for idx, cell in enumerate(cells):
            if cell & (cell - 1):
                target = idx
                break
        if target < 0:
            perm = [0] * n
            for pos, cell in enumerate(cells):
                perm[cell.bit_length() - 1] = pos
            key = leaf_key(perm)
            if best[0] is None or key < best[0]:
                best[0] = key
                best[1] = tuple(perm)
            elif key == best[0]:
                ref = best[1]
                inv_ref = [0] * n
                for v, p in enumerate(ref):
                    inv_ref[p] = v
                auto = tuple(inv_ref[perm[v]] for v in range(n))
                if any(auto[v] != v for v in range(n)):
                    autos.append(auto)
            return

        cell = cells[target]
        head = cells[:target]
        tail = cells[target + 1:]
        tried = 0
        for v in _bits(cell):
            if tried >> v & 1:
                continue
            # Mark the orbit of v under generators fixing the prefix pointwise.
            orbit = 1 << v
            while True:
                grown = orbit
                for g in autos:
                    if all(g[p] == p for p in prefix):
                        for u in _bits(orbit):
                            grown |= 1 << g[u]
                if grown == orbit:
                    break
                orbit = grown
            tried |= orbit
            recurse(head + [1 << v, cell & ~(1 << v)] + tail, prefix + (v,))

    recurse([(1 << n) - 1], ())
    return best[0], best[1], autos


def canonical_form(g: Graph) -> tuple[Graph, VertexPermutation]:
    """Canonical isomorph C and a witness permutation π with π(g) = C."""
    n = g.n
    if n == 1:
        return g, VertexPermutation.identity(1)
    _, perm, _ = _canonical_search(g.adj, n)
    p = VertexPermutation(perm)
    return Graph(_relabel_rows(g.adj, perm)), p


def canonical_graph(g: Graph) -> Graph:
    return canonical_form(g)[0]


def find_isomorphism(g: Graph, h: Graph) -> Optional[VertexPermutation]:
    """A permutation π with π(g) = h, or None if g and h are not isomorphic."""
    if g.n != h.n or g.edge_count() != h.edge_count():
        return None
    cg, pg = canonical_form(g)
    ch, ph = canonical_form(h)
    if cg.adj != ch.adj:
        return None
    return ph.inverse().compose(pg)


def automorphism_generators(g: Graph) -> list[VertexPermutation]:
    """Generators (not necessarily minimal) of the automorphism group found
    during canonical search; empty for rigid graphs."""
    if g.n == 1:
        return []
    _, _, autos = _canonical_search(g.adj, g.n)
    return [VertexPermutation(a) for a in autos]


# ---------------------------------------------------------------------------
# Connected-graph census
# ---------------------------------------------------------------------------

_census_cache: dict[int, list[Graph]] = {}


def _extend_parent(args: tuple[tuple[int, ...], int]) -> list[tuple[int, ...]]:
    """All canonical one-vertex extensions of a parent adjacency (worker task)."""
    parent, n = args
    seen = set()
    out = []
    new = n - 1
    for mask in range(1, 1 << new):
        adj = [row | (mask >> v & 1) << new for v, row in enumerate(parent)]
        adj.append(mask)
        _, perm, _ = _canonical_search(tuple(adj), n)
        canon = _relabel_rows(tuple(adj), perm)
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return out


def _connected_census(n: int, pool=None) -> list[Graph]:
    """All connected isomorphism classes on n vertices, canonical, sorted."""
    if n in _census_cache:
        return _census_cache[n]
    if n == 1:
        result = [Graph((0,))]
    else:
        parents = _connected_census(n - 1, pool)
        tasks = [(p.adj, n) for p in parents]
        if pool is not None:
            chunks = pool.imap_unordered(_extend_parent, tasks, chunksize=max(1, len(tasks) // 64))
        else:
            chunks = map(_extend_parent, tasks)
        seen: set[tuple[int, ...]] = set()
        for chunk in chunks:
            seen.update(chunk)
        result = [Graph(adj) for adj in seen]
        result.sort(key=adjacency_key)
    _census_cache[n] = result
    return result


def generate_connected_graphs(n: int) -> Iterator[Graph]:
    """One canonical representative per connected isomorphism class, sorted
    by adjacency key.  The built-in generator covers n ≤ 10; ingest a graph6
    census file for larger n."""
    if not 1 <= n <= _GENERATOR_MAX_N:
        raise CapabilityError(
            f"built-in generator supports 1..{_GENERATOR_MAX_N} vertices; "
            f"got n={n} — supply a graph6 census file instead"
        )
    yield from _connected_census(n)


# ---------------------------------------------------------------------------
# graph6 + edge-list formats
# ---------------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (standard 6-bit packed upper triangle)."""
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise GraphFormatError("empty graph6 string", 0)
    data = s.encode("ascii", errors="replace")
    for off, b in enumerate(data):
        if not 63 <= b <= 126:
            raise GraphFormatError(f"invalid graph6 byte {b!r}", off)
    if data[0] == 126:
        raise GraphFormatError("multi-byte vertex counts (n > 62) not supported", 0)
    n = data[0] - 63
    if not 1 <= n <= MAX_VERTICES:
        raise GraphFormatError(f"vertex count {n} outside 1..{MAX_VERTICES}", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - 1 != nbytes:
        raise GraphFormatError(
            f"expected {nbytes} data bytes for n={n}, got {len(data) - 1}", len(data)
        )
    bits = 0
    for b in data[1:]:
        bits = bits << 6 | (b - 63)
    pad = nbytes * 6 - nbits
    if bits & ((1 << pad) - 1):
        raise GraphFormatError("nonzero padding bits", len(data) - 1)
    bits >>= pad
    adj = [0] * n
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> pos & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            pos -= 1
    return Graph(tuple(adj))


def write_graph6(g: Graph) -> str:
    n = g.n
    bits = 0
    nbits = n * (n - 1) // 2
    for j in range(1, n):
        for i in range(j):
            bits = bits << 1 | (g.adj[i] >> j & 1)
    nbytes = (nbits + 5) // 6
    bits <<= nbytes * 6 - nbits
    out = [chr(63 + n)]
    for k in range(nbytes - 1, -1, -1):
        out.append(chr(63 + (bits >> 6 * k & 63)))
    return "".join(out)


def parse_edge_list(text: str, n: Optional[int] = None) -> Graph:
    """Parse "i-j,k-l,..." with 0-based vertices; whitespace is ignored.

    Without edges the vertex count cannot be inferred, so ``n`` is required.
    """
    compact = "".join(text.split())
    edges: list[tuple[int, int]] = []
    if compact:
        for tok in compact.split(","):
            if not tok:
                continue
            i, sep, j = tok.partition("-")
            if not sep or not i.isdigit() or not j.isdigit():
                raise GraphFormatError(f"bad edge token {tok!r}")
            a, b = int(i), int(j)
            if a == b:
                raise GraphFormatError(f"self-loop {tok!r}")
            edges.append((a, b))
    inferred = 1 + max((max(e) for e in edges), default=-1)
    if n is None:
        if not edges:
            raise GraphFormatError("empty edge list needs an explicit vertex count")
        n = inferred
    elif n < inferred:
        raise GraphFormatError(f"edge list mentions vertex {inferred - 1} but n={n}")
    if not 1 <= n <= MAX_VERTICES:
        raise GraphFormatError(f"vertex count {n} outside 1..{MAX_VERTICES}")
    return from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    return ",".join(f"{i}-{j}" for i, j in g.edges())
