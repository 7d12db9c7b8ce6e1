"""Proper edge coloring and the chromatic index.

Edges sharing a color form one parallel CZ time step, so the chromatic index
χ'(G) is the CZ-only preparation depth.  By Vizing χ' is Δ or Δ+1: the Δ case
is decided by exhaustive backtracking (with sound shortcuts), and class-2
graphs are colored constructively with Δ+1 colors by Misra-Gries style fan
rotation and alternating-path inversion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, _bits, is_bipartite, max_degree

# Exhaustive-search node budget; on exhaustion the search restarts in plain
# dictionary order.  Both passes are complete, so the answer never changes.
SEARCH_NODE_BUDGET = 10**8

Edge = tuple[int, int]


def _e(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass
class EdgeColoring:
    """Map edge -> 0-based color; proper iff incident edges differ."""

    colors: dict[Edge, int]
    num_colors: int

    def classes(self) -> list[list[Edge]]:
        """Color classes in color order; each sorted."""
        out: list[list[Edge]] = [[] for _ in range(self.num_colors)]
        for e, c in self.colors.items():
            out[c].append(e)
        for cls in out:
            cls.sort()
        return out

    def is_proper_for(self, g: Graph) -> bool:
        """Independent properness check: right edge set, no clash at a vertex."""
        if set(self.colors) != set(g.edges()):
            return False
        seen: set[tuple[int, int]] = set()
        for (u, v), c in self.colors.items():
            if not 0 <= c < self.num_colors:
                return False
            if (u, c) in seen or (v, c) in seen:
                return False
            seen.add((u, c))
            seen.add((v, c))
        used = {c for c in self.colors.values()}
        return used == set(range(self.num_colors)) or not self.colors


def _canonical_classes(colors: dict[Edge, int]) -> EdgeColoring:
    """Renumber colors so classes come in (size desc, least edge) order."""
    by_color: dict[int, list[Edge]] = {}
    for e, c in colors.items():
        by_color.setdefault(c, []).append(e)
    classes = sorted(by_color.values(), key=lambda cls: (-len(cls), min(cls)))
    out: dict[Edge, int] = {}
    for idx, cls in enumerate(classes):
        for e in cls:
            out[e] = idx
    return EdgeColoring(out, len(classes))


class _BudgetHit(Exception):
    pass


def _backtrack(g: Graph, k: int, edges: list[Edge], budget: int | None):
    """Exhaustive search for a proper k-coloring of ``edges`` (fixed order).

    Color symmetry is broken by allowing at most one fresh color per step.
    Returns an assignment list or None; raises _BudgetHit when over budget.
    """
    m = len(edges)
    avail = [(1 << k) - 1] * g.n
    assign = [0] * m
    nodes = 0

    def rec(idx: int, used: int) -> bool:
        nonlocal nodes
        if idx == m:
            return True
        u, v = edges[idx]
        cand = avail[u] & avail[v] & ((1 << min(k, used + 1)) - 1)
        while cand:
            low = cand & -cand
            cand ^= low
            nodes += 1
            if budget is not None and nodes > budget:
                raise _BudgetHit
            avail[u] ^= low
            avail[v] ^= low
            assign[idx] = low.bit_length() - 1
            if rec(idx + 1, max(used, low.bit_length())):
                return True
            avail[u] |= low
            avail[v] |= low
        return False

    return assign if rec(0, 0) else None


def _try_k_coloring(g: Graph, k: int) -> dict[Edge, int] | None:
    """Complete decision procedure: a proper k-coloring or None."""
    deg = [g.degree(v) for v in range(g.n)]
    heur = sorted(g.edges(), key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))
    try:
        assign = _backtrack(g, k, heur, SEARCH_NODE_BUDGET)
        edges = heur
    except _BudgetHit:
        edges = sorted(g.edges())
        assign = _backtrack(g, k, edges, None)
    if assign is None:
        return None
    return {e: c for e, c in zip(edges, assign)}


def _is_overfull(g: Graph, delta: int) -> bool:
    # Any Delta-coloring splits E into Delta matchings of size <= n//2.
    return g.edge_count() > delta * (g.n // 2)


def chromatic_index(g: Graph) -> int:
    """Exact χ'(G); 0 for edgeless graphs, else Δ or Δ+1."""
    if g.edge_count() == 0:
        return 0
    delta = max_degree(g)
    if delta == 1:
        return 1
    if is_bipartite(g):
        return delta  # König
    if _is_overfull(g, delta):
        return delta + 1
    return delta if _try_k_coloring(g, delta) is not None else delta + 1


def standard_depth(g: Graph) -> int:
    """CZ-only preparation depth of the graph state, i.e. χ'(G)."""
    return chromatic_index(g)


def edge_color_optimal(g: Graph) -> EdgeColoring:
    """Proper edge coloring with exactly χ'(G) colors."""
    if g.edge_count() == 0:
        return EdgeColoring({}, 0)
    delta = max_degree(g)
    colors = None if _is_overfull(g, delta) else _try_k_coloring(g, delta)
    if colors is None:
        colors = _misra_gries(g)
        assert len(set(colors.values())) == delta + 1
    return _canonical_classes(colors)


# ---------------------------------------------------------------------------
# Misra-Gries (Delta + 1 colors, constructive)
# ---------------------------------------------------------------------------

def _misra_gries(g: Graph) -> dict[Edge, int]:
    n = g.n
    k = max_degree(g) + 1
    full = (1 << k) - 1
    colors: dict[Edge, int] = {}
    used = [0] * n                      # color bitmask per vertex
    at: list[dict[int, int]] = [dict() for _ in range(n)]  # color -> neighbor

    def assign(u: int, v: int, c: int) -> None:
        used[u] |= 1 << c
        used[v] |= 1 << c
        at[u][c] = v
        at[v][c] = u
        colors[_e(u, v)] = c

    def unassign(u: int, v: int) -> int:
        c = colors.pop(_e(u, v))
        used[u] &= ~(1 << c)
        used[v] &= ~(1 << c)
        del at[u][c]
        del at[v][c]
        return c

    def lowest_free(v: int) -> int:
        free = ~used[v] & full
        return (free & -free).bit_length() - 1

    def fan_prefix_ok(u: int, fan: list[int], end: int) -> bool:
        # fan[0]'s edge is uncolored; each later edge's color must be free
        # on the preceding fan vertex, under the current coloring.
        for j in range(1, end + 1):
            c = colors.get(_e(u, fan[j]))
            if c is None or used[fan[j - 1]] >> c & 1:
                return False
        return True

    for u, v in sorted(g.edges()):
        # maximal fan of u starting at v
        fan = [v]
        in_fan = 1 << v
        while True:
            fm = ~used[fan[-1]] & full
            step = used[u] & fm
            nxt = -1
            while step:
                low = step & -step
                step ^= low
                w = at[u][low.bit_length() - 1]
                if not in_fan >> w & 1:
                    nxt = w
                    break
            if nxt < 0:
                break
            fan.append(nxt)
            in_fan |= 1 << nxt
        c = lowest_free(u)
        d = lowest_free(fan[-1])
        if used[u] >> d & 1:
            # invert the maximal c/d alternating path starting at u with d
            path = []
            x, col = u, d
            while used[x] >> col & 1:
                y = at[x][col]
                path.append((x, y))
                x, col = y, (c if col == d else d)
            # two-phase swap: a vertex may transiently see both colors
            olds = [unassign(a, b) for a, b in path]
            for (a, b), old in zip(path, olds):
                assign(a, b, c if old == d else d)
        # d is now free on u; find the shortest rotatable prefix
        w_idx = -1
        for i, fi in enumerate(fan):
            if not used[fi] >> d & 1 and fan_prefix_ok(u, fan, i):
                w_idx = i
                break
        assert w_idx >= 0, "fan rotation: no valid prefix (algorithm invariant)"
        shifted = [(fan[j], colors[_e(u, fan[j])]) for j in range(1, w_idx + 1)]
        for w, _ in shifted:
            unassign(u, w)
        for j, (_, col) in enumerate(shifted):
            assign(u, fan[j], col)
        assign(u, fan[w_idx], d)
    return colors
