"""Build, persist and query the LC-class database.

One record per local-complementation orbit of connected graphs on n vertices.
The build partitions the connected-graph census into orbits (union-find over
canonicalized LC images), computes per-member edge counts, chromatic indexes,
vertex covers and bipartiteness, and assembles per-orbit records ordered by
(|E|, Schmidt bracket, rank indexes, fingerprint, orbit size, orbit key).

The expensive per-graph steps parallelize over a process pool; the reduction
is sequential and deterministic, so rebuilds are byte-identical regardless of
worker count.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Callable, Optional

from .coloring import EdgeColoring, chromatic_index, edge_color_optimal
from .errors import CapabilityError, IntegrityError
from .graphs import (
    Graph,
    _canonical_search,
    _connected_census,
    _lc_adj,
    _relabel_rows,
    adjacency_key,
    canonical_form,
    is_bipartite,
    is_connected,
    parse_graph6,
    write_graph6,
)
from .invariants import (
    max_cut_rank,
    min_vertex_cover,
    rank_indexes,
    weight_enumerator,
)
from .orbits import enumerate_orbit

DB_VERSION = 1
_CHUNK = 4096


@dataclass(frozen=True)
class OptimumSummary:
    """One filter order's optimum: its (|E|, χ') pair, the number of
    nonisomorphic attainers, and the colored edge list of the chosen one."""

    edge_count: int
    chromatic_index: int
    count: int
    colored_classes: str


@dataclass(frozen=True)
class ClassRecord:
    class_id: int
    n: int
    orbit_size: int
    min_edges: int
    schmidt_lower: int
    schmidt_upper: int
    rank_indexes: tuple[tuple[int, ...], ...]
    two_colorable: bool
    min_edges_first: OptimumSummary
    min_chi_first: Optional[OptimumSummary]  # None iff both orders coincide
    fingerprint: tuple[int, ...]
    orbit_key: str  # graph6 of the orbit's least canonical member


def format_colored_classes(coloring: EdgeColoring) -> str:
    return "".join(
        "(" + ",".join(f"{i}-{j}" for i, j in cls) + ")" for cls in coloring.classes()
    )


# ---------------------------------------------------------------------------
# Parallel build machinery.  Workers read the census through a module global
# set in the parent before the (fork) pool is created.
# ---------------------------------------------------------------------------

_WORK: dict = {}


def _lc_links_task(span: tuple[int, int]) -> list[list[int]]:
    """For ids in [start, end): links (gid, dest_gid) for nontrivial LC moves."""
    graphs: list[tuple[int, ...]] = _WORK["graphs"]
    index: dict[tuple[int, ...], int] = _WORK["index"]
    start, end = span
    links: list[list[int]] = []
    for gid in range(start, end):
        adj = graphs[gid]
        n = len(adj)
        for a in range(n):
            if adj[a].bit_count() <= 1:
                continue  # LC at degree <= 1 fixes the graph
            image = _lc_adj(adj, a)
            _, perm, _ = _canonical_search(image, n)
            dest = index.get(_relabel_rows(image, perm))
            if dest is None:
                raise IntegrityError(
                    "LC image escapes the census: incomplete graph source"
                )
            if dest != gid:
                links.append([gid, dest])
    return links


def _stats_task(span: tuple[int, int]) -> list[list[int]]:
    """Per member: [edge_count, chromatic_index, min_vertex_cover, bipartite]."""
    graphs: list[tuple[int, ...]] = _WORK["graphs"]
    start, end = span
    out = []
    for gid in range(start, end):
        g = Graph(graphs[gid])
        out.append(
            [g.edge_count(), chromatic_index(g), min_vertex_cover(g), int(is_bipartite(g))]
        )
    return out


def _spans(total: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]


def _checkpointed_map(task, spans, pool, checkpoint_dir, tag):
    """Map ``task`` over spans, caching each span's JSON result on disk."""
    results: list = [None] * len(spans)
    todo = []
    for k, span in enumerate(spans):
        path = None
        if checkpoint_dir is not None:
            path = os.path.join(checkpoint_dir, f"{tag}_{span[0]}_{span[1]}.json")
            if os.path.exists(path):
                with open(path, "r", encoding="utf-8") as fh:
                    results[k] = json.load(fh)
                continue
        todo.append((k, span, path))
    mapper = pool.imap if pool is not None else map
    for (k, _, path), result in zip(todo, mapper(task, [s for _, s, _ in todo])):
        results[k] = result
        if path is not None:
            tmp = path + ".tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump(result, fh)
            os.replace(tmp, path)
    return results


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _load_census(n: int, graph6_path, pool, checkpoint_dir, progress) -> list[Graph]:
    cache = None
    if checkpoint_dir is not None:
        cache = os.path.join(checkpoint_dir, f"census_n{n}.g6")
        if os.path.exists(cache):
            with open(cache, "r", encoding="utf-8") as fh:
                graphs = [parse_graph6(line) for line in fh if line.strip()]
            graphs.sort(key=adjacency_key)
            return graphs
    if graph6_path is not None:
        seen: set[tuple[int, ...]] = set()
        with open(graph6_path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                g = parse_graph6(line)
                if g.n != n:
                    raise IntegrityError(f"census line has n={g.n}, expected {n}")
                if not is_connected(g):
                    raise IntegrityError("census contains a disconnected graph")
                seen.add(canonical_form(g)[0].adj)
        graphs = sorted((Graph(adj) for adj in seen), key=adjacency_key)
    else:
        graphs = _connected_census(n, pool)
    if progress:
        progress(f"census: {len(graphs)} connected classes on {n} vertices")
    if cache is not None:
        tmp = cache + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            for g in graphs:
                fh.write(write_graph6(g) + "\n")
        os.replace(tmp, cache)
    return graphs


def build_database(
    n: int,
    graph6_path: Optional[str] = None,
    workers: int = 1,
    allow_large: bool = False,
    checkpoint_dir: Optional[str] = None,
    progress: Optional[Callable[[str], None]] = None,
) -> list[ClassRecord]:
    """Partition the connected census on n vertices into LC classes."""
    if not 2 <= n <= 12:
        raise CapabilityError(f"database build supports 2 <= n <= 12, got {n}")
    if n >= 10 and not allow_large:
        raise CapabilityError(
            f"n={n} is an hours-scale batch build; pass allow_large=True "
            "(CLI: --allow-large), ideally with a checkpoint directory"
        )
    if checkpoint_dir is not None:
        os.makedirs(checkpoint_dir, exist_ok=True)

    ctx = get_context("fork")
    census_pool = ctx.Pool(workers) if workers > 1 else None
    try:
        graphs = _load_census(n, graph6_path, census_pool, checkpoint_dir, progress)
    finally:
        if census_pool is not None:
            census_pool.close()
            census_pool.join()

    adjs = [g.adj for g in graphs]
    _WORK["graphs"] = adjs
    _WORK["index"] = {adj: gid for gid, adj in enumerate(adjs)}
    pool = ctx.Pool(workers) if workers > 1 else None
    try:
        spans = _spans(len(adjs))
        links_chunks = _checkpointed_map(
            _lc_links_task, spans, pool, checkpoint_dir, f"lclinks_n{n}"
        )
        if progress:
            progress("orbit partition: LC links computed")
        stats_chunks = _checkpointed_map(
            _stats_task, spans, pool, checkpoint_dir, f"stats_n{n}"
        )
        if progress:
            progress("member statistics computed")
    finally:
        if pool is not None:
            pool.close()
            pool.join()
        _WORK.clear()

    uf = _UnionFind(len(adjs))
    for chunk in links_chunks:
        for gid, dest in chunk:
            uf.union(gid, dest)
    stats: list[list[int]] = [row for chunk in stats_chunks for row in chunk]

    orbits: dict[int, list[int]] = {}
    for gid in range(len(adjs)):
        orbits.setdefault(uf.find(gid), []).append(gid)
    if sum(len(v) for v in orbits.values()) != len(adjs):
        raise IntegrityError("orbit partition does not cover the census")

    summaries = []
    for root in sorted(orbits):
        member_ids = orbits[root]  # ascending = adjacency-key order
        summaries.append(_summarize_orbit(graphs, stats, member_ids))
    summaries.sort(key=lambda s: s[0])
    records = [
        _record_from_summary(class_id, n, summary)
        for class_id, (_, summary) in enumerate(summaries, start=1)
    ]
    if progress:
        progress(f"{len(records)} LC classes on {n} vertices")
    return records


def _summarize_orbit(graphs: list[Graph], stats, member_ids: list[int]):
    pairs = {gid: (stats[gid][0], stats[gid][1]) for gid in member_ids}
    min_e = min(e for e, _ in pairs.values())
    chi_at_min_e = min(c for e, c in pairs.values() if e == min_e)
    min_chi = min(c for _, c in pairs.values())
    e_at_min_chi = min(e for e, c in pairs.values() if c == min_chi)

    def summarize(pair) -> OptimumSummary:
        attainers = [gid for gid, p in pairs.items() if p == pair]
        rep = graphs[min(attainers)]
        coloring = edge_color_optimal(rep)
        assert coloring.num_colors == pair[1]
        return OptimumSummary(pair[0], pair[1], len(attainers), format_colored_classes(coloring))

    first = summarize((min_e, chi_at_min_e))
    second = None
    if (e_at_min_chi, min_chi) != (min_e, chi_at_min_e):
        second = summarize((e_at_min_chi, min_chi))

    least = graphs[member_ids[0]]
    ri = rank_indexes(least).vectors
    fingerprint = weight_enumerator(least).counts
    lower = max_cut_rank(least)
    upper = min(stats[gid][2] for gid in member_ids)
    assert lower <= upper
    summary = {
        "orbit_size": len(member_ids),
        "min_edges": min_e,
        "schmidt": (lower, upper),
        "rank_indexes": ri,
        "two_colorable": any(stats[gid][3] for gid in member_ids),
        "first": first,
        "second": second,
        "fingerprint": fingerprint,
        "orbit_key": write_graph6(least),
    }
    sort_key = (
        min_e,
        (lower, upper),
        ri,
        fingerprint,
        len(member_ids),
        adjacency_key(least),
    )
    return sort_key, summary


def _record_from_summary(class_id: int, n: int, s: dict) -> ClassRecord:
    return ClassRecord(
        class_id=class_id,
        n=n,
        orbit_size=s["orbit_size"],
        min_edges=s["min_edges"],
        schmidt_lower=s["schmidt"][0],
        schmidt_upper=s["schmidt"][1],
        rank_indexes=s["rank_indexes"],
        two_colorable=s["two_colorable"],
        min_edges_first=s["first"],
        min_chi_first=s["second"],
        fingerprint=s["fingerprint"],
        orbit_key=s["orbit_key"],
    )


def exceptional_orbits(records: list[ClassRecord]) -> int:
    """Orbits where the two filter orders pick different (|E|, χ') pairs."""
    return sum(1 for r in records if r.min_chi_first is not None)


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------

def _record_to_dict(r: ClassRecord) -> dict:
    def opt(o: Optional[OptimumSummary]):
        if o is None:
            return None
        return {
            "edges": o.edge_count,
            "chi": o.chromatic_index,
            "count": o.count,
            "coloring": o.colored_classes,
        }

    return {
        "class_id": r.class_id,
        "n": r.n,
        "orbit_size": r.orbit_size,
        "min_edges": r.min_edges,
        "schmidt": [r.schmidt_lower, r.schmidt_upper],
        "rank_indexes": [list(v) for v in r.rank_indexes],
        "two_colorable": r.two_colorable,
        "min_edges_first": opt(r.min_edges_first),
        "min_chi_first": opt(r.min_chi_first),
        "fingerprint": list(r.fingerprint),
        "orbit_key": r.orbit_key,
    }


def _record_from_dict(d: dict) -> ClassRecord:
    def opt(o) -> Optional[OptimumSummary]:
        if o is None:
            return None
        return OptimumSummary(o["edges"], o["chi"], o["count"], o["coloring"])

    return ClassRecord(
        class_id=d["class_id"],
        n=d["n"],
        orbit_size=d["orbit_size"],
        min_edges=d["min_edges"],
        schmidt_lower=d["schmidt"][0],
        schmidt_upper=d["schmidt"][1],
        rank_indexes=tuple(tuple(v) for v in d["rank_indexes"]),
        two_colorable=d["two_colorable"],
        min_edges_first=opt(d["min_edges_first"]),
        min_chi_first=opt(d["min_chi_first"]),
        fingerprint=tuple(d["fingerprint"]),
        orbit_key=d["orbit_key"],
    )


def save(records: list[ClassRecord], path: str) -> None:
    if not records:
        raise ValueError("refusing to save an empty database")
    n = records[0].n
    lines = [json.dumps(_record_to_dict(r), separators=(",", ":")) for r in records]
    body = "".join(line + "\n" for line in lines)
    header = {
        "version": DB_VERSION,
        "n": n,
        "count": len(records),
        "checksum": hashlib.sha256(body.encode("utf-8")).hexdigest(),
    }
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, separators=(",", ":")) + "\n")
        fh.write(body)
    os.replace(tmp, path)


def load(path: str) -> list[ClassRecord]:
    with open(path, "r", encoding="utf-8") as fh:
        header_line = fh.readline()
        body = fh.read()
    try:
        header = json.loads(header_line)
    except json.JSONDecodeError:
        raise IntegrityError("database header is not valid JSON") from None
    if header.get("version") != DB_VERSION:
        raise IntegrityError(f"unsupported database version {header.get('version')!r}")
    if hashlib.sha256(body.encode("utf-8")).hexdigest() != header.get("checksum"):
        raise IntegrityError("database checksum mismatch (truncated or edited file)")
    records = [_record_from_dict(json.loads(line)) for line in body.splitlines()]
    if len(records) != header.get("count"):
        raise IntegrityError("database record count mismatch")
    return records


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def classify(g: Graph, records: list[ClassRecord]) -> ClassRecord:
    """Exact LC class of ``g``: invariants act only as a pre-filter, orbit
    membership via the least canonical member decides."""
    if not records:
        raise IntegrityError("empty database")
    n = records[0].n
    if g.n != n:
        raise ValueError(f"graph has n={g.n} but database covers n={n}")
    if not is_connected(g):
        raise ValueError("classification requires a connected graph")
    fingerprint = weight_enumerator(g).counts
    ri = rank_indexes(g).vectors
    candidates = [
        r for r in records if r.fingerprint == fingerprint and r.rank_indexes == ri
    ]
    if not candidates:
        raise IntegrityError(
            "no class matches the graph's invariants: database/census mismatch"
        )
    if len(candidates) == 1:
        # a complete database must contain g's orbit, so a unique invariant
        # match is already exact
        return candidates[0]
    orbit = enumerate_orbit(g)
    key = write_graph6(orbit.members[orbit.least_member_index()])
    for r in candidates:
        if r.orbit_key == key:
            return r
    raise IntegrityError("orbit key missing from database: database/census mismatch")
