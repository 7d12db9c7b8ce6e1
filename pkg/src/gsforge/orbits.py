"""Local-complementation orbits over isomorphism classes.

An orbit is enumerated breadth-first in canonical-form space: each member is
a canonical graph, and every (member, vertex) transition stores the witness
permutation that carries the labeled LC image onto the destination member.
That witness table lets a canonical-space path be lifted back to labeled
graphs, which is how the compiler recovers a concrete LC sequence from the
optimal representative to the target.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .coloring import EdgeColoring, chromatic_index, edge_color_optimal
from .errors import ResourceBudgetError
from .graphs import (
    Graph,
    VertexPermutation,
    _canonical_search,
    _lc_adj,
    _relabel_rows,
    adjacency_key,
    canonical_form,
    is_bipartite,
    local_complement,
)

DEFAULT_MEMBER_BUDGET = 5_000_000

STRATEGY_MIN_EDGES = "minE_first"
STRATEGY_MIN_CHI = "minChi_first"
_STRATEGIES = (STRATEGY_MIN_EDGES, STRATEGY_MIN_CHI)


@dataclass
class IsoOrbit:
    """BFS closure of a seed's canonical form under local complementation.

    ``moves[(i, a)]`` is ``(j, sigma)`` with sigma(lc(members[i], a)) ==
    members[j]; ``parents[j]`` is the BFS tree edge (i, a, sigma) that
    discovered member j (None for the source).
    """

    source: Graph
    members: list[Graph]
    moves: dict[tuple[int, int], tuple[int, VertexPermutation]]
    parents: list[Optional[tuple[int, int, VertexPermutation]]]
    _stats: Optional[list[tuple[int, int]]] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.members)

    def member_index(self, g: Graph) -> Optional[int]:
        adj = g.adj
        for i, m in enumerate(self.members):
            if m.adj == adj:
                return i
        return None

    def least_member_index(self) -> int:
        keys = [adjacency_key(m) for m in self.members]
        return keys.index(min(keys))


def enumerate_orbit(g: Graph, member_budget: int = DEFAULT_MEMBER_BUDGET) -> IsoOrbit:
    """Deterministic BFS over canonical forms reachable by LC moves."""
    n = g.n
    source, _ = canonical_form(g)
    adjs = [source.adj]
    index = {source.adj: 0}
    moves: dict[tuple[int, int], tuple[int, VertexPermutation]] = {}
    parents: list[Optional[tuple[int, int, VertexPermutation]]] = [None]
    ident = VertexPermutation.identity(n)
    head = 0
    while head < len(adjs):
        i = head
        head += 1
        adj = adjs[i]
        for a in range(n):
            if adj[a].bit_count() <= 1:
                moves[(i, a)] = (i, ident)  # lc at degree <= 1 fixes the graph
                continue
            image = _lc_adj(adj, a)
            _, perm, _ = _canonical_search(image, n)
            canon = _relabel_rows(image, perm)
            j = index.get(canon)
            if j is None:
                if len(adjs) >= member_budget:
                    raise ResourceBudgetError(
                        "orbit member budget exceeded", member_budget
                    )
                j = len(adjs)
                adjs.append(canon)
                index[canon] = j
                parents.append((i, a, VertexPermutation(perm)))
            moves[(i, a)] = (j, VertexPermutation(perm))
    members = [source] + [Graph(adj) for adj in adjs[1:]]
    return IsoOrbit(source, members, moves, parents)


# Cache shared by the compiler paths so that one target graph's orbit is not
# re-enumerated per strategy.  Treat cached orbits as read-only.
_orbit_cached = lru_cache(maxsize=16)(enumerate_orbit)


@dataclass(frozen=True)
class RepresentativeChoice:
    """Optimum under one filter order: the (|E|, χ') pair it attains, how many
    nonisomorphic members attain it, the least such member, and a coloring."""

    edge_count: int
    chromatic_index: int
    count: int
    rep: Graph
    coloring: EdgeColoring


@dataclass(frozen=True)
class RepresentativeReport:
    min_edges_first: RepresentativeChoice
    min_chi_first: Optional[RepresentativeChoice]  # None when coincident

    @property
    def coincident(self) -> bool:
        return self.min_chi_first is None

    def choice(self, strategy: str) -> RepresentativeChoice:
        if strategy not in _STRATEGIES:
            raise ValueError(f"strategy must be one of {_STRATEGIES}, got {strategy!r}")
        if strategy == STRATEGY_MIN_CHI and self.min_chi_first is not None:
            return self.min_chi_first
        return self.min_edges_first


def _member_stats(orbit: IsoOrbit) -> list[tuple[int, int]]:
    if orbit._stats is None:
        orbit._stats = [(m.edge_count(), chromatic_index(m)) for m in orbit.members]
    return orbit._stats


def optimal_representatives(orbit: IsoOrbit) -> RepresentativeReport:
    """Apply both filter orders min(|E|, χ') and min(χ', |E|) to the orbit."""
    stats = _member_stats(orbit)

    def pick(pair) -> RepresentativeChoice:
        attainers = [i for i, s in enumerate(stats) if s == pair]
        rep = min((orbit.members[i] for i in attainers), key=adjacency_key)
        coloring = edge_color_optimal(rep)
        assert coloring.num_colors == pair[1]
        return RepresentativeChoice(pair[0], pair[1], len(attainers), rep, coloring)

    min_e = min(e for e, _ in stats)
    chi_at_min_e = min(c for e, c in stats if e == min_e)
    min_chi = min(c for _, c in stats)
    e_at_min_chi = min(e for e, c in stats if c == min_chi)

    first = pick((min_e, chi_at_min_e))
    if (min_e, chi_at_min_e) == (e_at_min_chi, min_chi):
        return RepresentativeReport(first, None)
    return RepresentativeReport(first, pick((e_at_min_chi, min_chi)))


def two_colorable_member(orbit: IsoOrbit) -> Optional[Graph]:
    """First bipartite member in discovery order, if the class has one."""
    for m in orbit.members:
        if is_bipartite(m):
            return m
    return None


def _tree_path(orbit: IsoOrbit, target: int) -> list[tuple[int, VertexPermutation]]:
    """BFS tree edges (vertex, witness) from the source to ``target``."""
    path = []
    i = target
    while orbit.parents[i] is not None:
        parent, a, sigma = orbit.parents[i]
        path.append((a, sigma))
        i = parent
    path.reverse()
    return path


def find_lc_sequence(
    g: Graph,
    strategy: str = STRATEGY_MIN_EDGES,
    member_budget: int = DEFAULT_MEMBER_BUDGET,
) -> tuple[Graph, list[int]]:
    """A labeled graph H attaining the strategy's optimum (|E|, χ') pair plus
    a vertex sequence whose successive local complementations map H to g.

    The canonical-space BFS path from canonical(g) to the optimal member is
    lifted to g's labels by dragging the running isomorphism witness along;
    the lifted path read backwards is the requested sequence (each LC step
    is an involution).  ``seq`` is empty iff g itself attains the optimum.
    """
    orbit = _orbit_cached(g, member_budget)
    report = optimal_representatives(orbit)
    choice = report.choice(strategy)
    pair = (choice.edge_count, choice.chromatic_index)
    if (g.edge_count(), chromatic_index(g)) == pair:
        return g, []

    _, pi0 = canonical_form(g)
    rep_index = orbit.member_index(choice.rep)
    assert rep_index is not None
    lift = pi0.inverse()  # current member labels -> g labels
    forward: list[int] = []
    for a, sigma in _tree_path(orbit, rep_index):
        forward.append(lift(a))
        lift = lift.compose(sigma.inverse())
    h = lift.apply(choice.rep)

    replay = h
    seq = forward[::-1]
    for v in seq:
        replay = local_complement(replay, v)
    assert replay.adj == g.adj, "LC lift failed to reproduce the target"
    assert (h.edge_count(), chromatic_index(h)) == pair
    return h, seq
