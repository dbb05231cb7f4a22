"""Exhaustive desk-scale verification: enumerate every labeled loopy graph of
a degree sequence, build the meta-graph whose nodes are realizations and whose
edges are single swaps, and check the structural claims the fast tests and the
sampler rely on.

Everything here is brute force on purpose; it is the independent side of every
dual-route check.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations

from .degseq import (
    NotLoopyGraphical,
    detect_disconnected,
    is_loopy_graphical,
    max_degree_guarantees_connected,
    max_loop_count,
)
from .graph import LoopyGraph, is_in_clique_trap, is_in_cycle_trap
from .swaps import double_neighbor_edge_sets, triangle_neighbor_edge_sets

__all__ = [
    "BoundExceeded",
    "UnknownNeighbor",
    "SwapGraph",
    "DEFAULT_ENUM_BOUND",
    "enumerate_loopy_graphs",
    "build_swap_graph",
    "components",
    "max_loop_representatives",
    "stationary_distribution",
    "is_max_loopy",
    "verify_sequence",
    "generate_sequences",
    "run_sweep",
    "to_dot",
]

DEFAULT_ENUM_BOUND = 16
CHECK_MEANINGS = {
    "a": "space is swap-disconnected iff some realization sits in a trap class",
    "b": "trap classes are closed under valid double swaps",
    "c": "triangle/loop exchanges make the space one component",
    "d": "max-degree certificate never contradicts brute-force components",
    "e": "peeling detector verdict matches brute-force components",
    "f": "all max-loop realizations share one double-swap component",
    "g": "max-loop representatives without a loop-free triangle are max-loopy",
}


class BoundExceeded(ValueError):
    """Degree sum too large for exhaustive enumeration."""


class UnknownNeighbor(KeyError):
    """A swap produced a graph missing from the enumeration (never expected)."""


def _enumerate_edge_sets(ds: tuple[int, ...]):
    """Yield every valid edge set realizing ``ds``, each exactly once.

    Vertices are finished in index order; a vertex's loop choice and its
    full forward partner set are decided in one step, so no wiring is ever
    produced twice.
    """
    n = len(ds)
    residual = list(ds)
    edges: list[tuple[int, int]] = []

    def rec(u: int):
        while u < n and residual[u] == 0:
            u += 1
        if u == n:
            yield frozenset(edges)
            return
        r = residual[u]
        candidates = [v for v in range(u + 1, n) if residual[v] > 0]
        loop_options = (0, 1) if r >= 2 else (0,)
        for loop in loop_options:
            k = r - 2 * loop
            if k > len(candidates):
                continue
            if loop:
                edges.append((u, u))
            for combo in combinations(candidates, k):
                for v in combo:
                    residual[v] -= 1
                    edges.append((u, v))
                yield from rec(u + 1)
                for v in combo:
                    residual[v] += 1
                del edges[len(edges) - k:]
            if loop:
                edges.pop()

    if sum(ds) % 2 == 0 and all(d >= 0 for d in ds):
        yield from rec(0)


def enumerate_loopy_graphs(ds, max_sum: int = DEFAULT_ENUM_BOUND) -> list[LoopyGraph]:
    """All labeled loopy graphs with degree sequence ``ds``.

    Raises ``BoundExceeded`` when ``sum(ds)`` is above ``max_sum``; the count
    can grow factorially with the degree sum.
    """
    ds = tuple(int(d) for d in ds)
    if sum(ds) > max_sum:
        raise BoundExceeded(f"degree sum {sum(ds)} exceeds bound {max_sum}")
    n = len(ds)
    return [LoopyGraph.from_edge_set(n, es) for es in _enumerate_edge_sets(ds)]


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        parent = self.parent
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def labels(self) -> tuple[list[int], int]:
        """Component labels numbered 0..count-1 in node order."""
        remap: dict[int, int] = {}
        out = []
        for a in range(len(self.parent)):
            root = self.find(a)
            if root not in remap:
                remap[root] = len(remap)
            out.append(remap[root])
        return out, len(remap)


@dataclass
class SwapGraph:
    """Meta-graph over one degree sequence: nodes are realizations, edges are
    single valid moves. ``triangle_adjacency`` & friends are None when the
    triangle moves were not requested."""

    nodes: list[LoopyGraph]
    index: dict[bytes, int]
    double_adjacency: list[tuple[int, ...]]
    triangle_adjacency: list[tuple[int, ...]] | None
    components_double: list[int]
    n_components_double: int
    components_triangle: list[int] | None
    n_components_triangle: int | None


def _neighbor_indices(set_index, gen) -> set[int]:
    out = set()
    for es in gen:
        j = set_index.get(es)
        if j is None:
            raise UnknownNeighbor(f"swap result missing from enumeration: {sorted(es)}")
        out.add(j)
    return out


def build_swap_graph(graphs: list[LoopyGraph], include_triangle: bool = True) -> SwapGraph:
    """Adjacency, via one-move neighborhoods, over an enumerated space."""
    edge_sets = [g.edges for g in graphs]
    set_index = {es: i for i, es in enumerate(edge_sets)}
    index = {g.canonical_key(): i for i, g in enumerate(graphs)}
    double_adj = []
    triangle_adj = [] if include_triangle else None
    ufd = _UnionFind(len(graphs))
    uft = _UnionFind(len(graphs))
    for i, g in enumerate(graphs):
        edge_list = sorted(g.edges)
        dn = _neighbor_indices(set_index, double_neighbor_edge_sets(edge_list, g.edges))
        dn.discard(i)
        double_adj.append(tuple(sorted(dn)))
        for j in dn:
            ufd.union(i, j)
            uft.union(i, j)
        if include_triangle:
            tn = _neighbor_indices(set_index,
                                   triangle_neighbor_edge_sets(g.n, edge_list, g.edges))
            tn.discard(i)
            triangle_adj.append(tuple(sorted(tn)))
            for j in tn:
                uft.union(i, j)
    comp_d, ncomp_d = ufd.labels()
    if include_triangle:
        comp_t, ncomp_t = uft.labels()
    else:
        comp_t, ncomp_t = None, None
    return SwapGraph(
        nodes=list(graphs),
        index=index,
        double_adjacency=double_adj,
        triangle_adjacency=triangle_adj,
        components_double=comp_d,
        n_components_double=ncomp_d,
        components_triangle=comp_t,
        n_components_triangle=ncomp_t,
    )


def components(swap_graph: SwapGraph, triangle: bool = False) -> tuple[list[int], int]:
    """Component label per node plus component count."""
    if triangle:
        if swap_graph.components_triangle is None:
            raise ValueError("swap graph was built without triangle moves")
        return list(swap_graph.components_triangle), swap_graph.n_components_triangle
    return list(swap_graph.components_double), swap_graph.n_components_double


def _loopless_internal_edge_count(g: LoopyGraph) -> int:
    looped = {u for u, v in g.edges if u == v}
    return sum(1 for u, v in g.edges if u != v and u not in looped and v not in looped)


def _has_loopless_triangle(g: LoopyGraph) -> bool:
    looped = {u for u, v in g.edges if u == v}
    adj: dict[int, set[int]] = {}
    for u, v in g.edges:
        if u != v and u not in looped and v not in looped:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
    for u, v in g.edges:
        if u != v and u in adj and v in adj and adj[u] & adj[v]:
            return True
    return False


def is_max_loopy(graph: LoopyGraph, mstar: int | None = None) -> bool:
    """Does the graph carry the maximum possible loops, placed on a
    top-degree vertex set?  Ties at the cut are allowed: any loop placement
    where every looped vertex's degree is >= every unlooped vertex's counts."""
    ds = graph.degree_sequence()
    if mstar is None:
        mstar = max_loop_count(ds)
    looped = [u for u, v in graph.edges if u == v]
    if len(looped) != mstar:
        return False
    loop_set = set(looped)
    lo = min((ds[u] for u in looped), default=None)
    hi = max((ds[u] for u in range(graph.n) if u not in loop_set), default=None)
    return lo is None or hi is None or lo >= hi


def max_loop_representatives(swap_graph: SwapGraph, component: int) -> list[LoopyGraph]:
    """Graphs of one double-swap component with the most self-loops; ties are
    broken toward the most edges among loop-free vertices, and every graph
    achieving both maxima is returned."""
    members = [i for i, c in enumerate(swap_graph.components_double) if c == component]
    if not members:
        raise ValueError(f"no such component: {component}")
    best_loops = max(swap_graph.nodes[i].loop_count() for i in members)
    tied = [i for i in members if swap_graph.nodes[i].loop_count() == best_loops]
    scores = {i: _loopless_internal_edge_count(swap_graph.nodes[i]) for i in tied}
    best_score = max(scores.values())
    return [swap_graph.nodes[i] for i in tied if scores[i] == best_score]


def stationary_distribution(graphs: list[LoopyGraph], mode: str) -> dict[bytes, float]:
    """Target weights of the sampler over an enumerated collection.

    ``"vertex"`` weights every graph equally; ``"stub"`` weights each graph
    proportionally to 2**(-loop count).
    """
    if mode == "vertex":
        w = [1.0] * len(graphs)
    elif mode == "stub":
        w = [2.0 ** (-g.loop_count()) for g in graphs]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    total = sum(w)
    return {g.canonical_key(): wi / total for g, wi in zip(graphs, w)}


def verify_sequence(ds, max_sum: int = DEFAULT_ENUM_BOUND) -> dict:
    """Brute-force the whole space of ``ds`` and run consistency checks a-g.

    See ``CHECK_MEANINGS`` for what each letter asserts. The report is
    JSON-ready: ``{sequence, n_graphs, components_double,
    components_triangle, disconnected, q1_count, q2_count, checks}``.
    """
    ds = tuple(int(d) for d in ds)
    if sum(ds) > max_sum:
        raise BoundExceeded(f"degree sum {sum(ds)} exceeds bound {max_sum}")
    if not is_loopy_graphical(ds):
        raise NotLoopyGraphical(f"{ds} is not loopy-graphical")
    n = len(ds)
    edge_sets = list(_enumerate_edge_sets(ds))
    count = len(edge_sets)
    set_index = {es: i for i, es in enumerate(edge_sets)}
    mstar = max_loop_count(ds)

    clique_trap = [False] * count
    cycle_trap = [False] * count
    loops = [0] * count
    maxloopy = [False] * count
    for i, es in enumerate(edge_sets):
        g = LoopyGraph.from_edge_set(n, es)
        clique_trap[i] = is_in_clique_trap(g)
        cycle_trap[i] = is_in_cycle_trap(g)
        loops[i] = g.loop_count()
        maxloopy[i] = is_max_loopy(g, mstar)

    ufd = _UnionFind(count)
    uft = _UnionFind(count)
    closure_ok = True
    for i, es in enumerate(edge_sets):
        edge_list = sorted(es)
        trap_i = clique_trap[i] or cycle_trap[i]
        for nb in double_neighbor_edge_sets(edge_list, es):
            j = set_index.get(nb)
            if j is None:
                raise UnknownNeighbor(f"swap result missing from enumeration: {sorted(nb)}")
            ufd.union(i, j)
            uft.union(i, j)
            if trap_i and (clique_trap[i] != clique_trap[j] or cycle_trap[i] != cycle_trap[j]):
                closure_ok = False
        for nb in triangle_neighbor_edge_sets(n, edge_list, es):
            j = set_index.get(nb)
            if j is None:
                raise UnknownNeighbor(f"swap result missing from enumeration: {sorted(nb)}")
            uft.union(i, j)

    comp_d, ncomp_d = ufd.labels()
    _, ncomp_t = uft.labels()
    disconnected = ncomp_d > 1
    q1_count = sum(clique_trap)
    q2_count = sum(cycle_trap)

    # f: every max-loop realization in one double-swap component
    maxloopy_roots = {comp_d[i] for i in range(count) if maxloopy[i]}
    check_f = len(maxloopy_roots) <= 1

    # g: representatives without a loop-free triangle must be max-loopy
    check_g = True
    best_loops: dict[int, int] = {}
    for i in range(count):
        c = comp_d[i]
        if loops[i] > best_loops.get(c, -1):
            best_loops[c] = loops[i]
    best_score: dict[int, int] = {}
    rep_sets: dict[int, list[int]] = {}
    for i in range(count):
        c = comp_d[i]
        if loops[i] != best_loops[c]:
            continue
        g = LoopyGraph.from_edge_set(n, edge_sets[i])
        score = _loopless_internal_edge_count(g)
        if score > best_score.get(c, -1):
            best_score[c] = score
            rep_sets[c] = [i]
        elif score == best_score[c]:
            rep_sets[c].append(i)
    for c, reps in rep_sets.items():
        for i in reps:
            g = LoopyGraph.from_edge_set(n, edge_sets[i])
            if not _has_loopless_triangle(g) and not maxloopy[i]:
                check_g = False

    try:
        detected = detect_disconnected(ds).status == "disconnected"
    except Exception:
        detected = None
    checks = {
        "a": disconnected == (q1_count + q2_count > 0),
        "b": closure_ok,
        "c": ncomp_t == 1,
        "d": (not max_degree_guarantees_connected(ds)) or not disconnected,
        "e": detected is not None and detected == disconnected,
        "f": check_f,
        "g": check_g,
    }
    return {
        "sequence": list(ds),
        "n_graphs": count,
        "components_double": ncomp_d,
        "components_triangle": ncomp_t,
        "disconnected": disconnected,
        "q1_count": q1_count,
        "q2_count": q2_count,
        "checks": checks,
    }


# -- sweeping every small sequence -------------------------------------------

def generate_sequences(max_sum: int) -> list[tuple[int, ...]]:
    """Every loopy-graphical non-increasing sequence of positive degrees with
    an even sum up to ``max_sum``."""
    seqs: list[tuple[int, ...]] = []

    def parts(remaining: int, cap: int, prefix: list[int]):
        if remaining == 0:
            seqs.append(tuple(prefix))
            return
        for v in range(min(cap, remaining), 0, -1):
            prefix.append(v)
            parts(remaining - v, v, prefix)
            prefix.pop()

    for total in range(2, max_sum + 1, 2):
        parts(total, total, [])
    return [s for s in seqs if is_loopy_graphical(s)]


def _sweep_worker(args) -> dict:
    ds, max_sum = args
    return verify_sequence(ds, max_sum=max_sum)


def run_sweep(max_sum: int, workers: int | None = None) -> list[dict]:
    """``verify_sequence`` over every sequence from ``generate_sequences``.

    ``workers`` defaults to the LOOPY_THREADS environment variable, then to
    the CPU count. Reports come back in sequence order regardless of worker
    scheduling.
    """
    seqs = generate_sequences(max_sum)
    if workers is None:
        workers = int(os.environ.get("LOOPY_THREADS", os.cpu_count() or 1))
    tasks = [(s, max_sum) for s in seqs]
    if workers <= 1 or len(tasks) <= 1:
        return [_sweep_worker(t) for t in tasks]
    from multiprocessing import Pool

    with Pool(workers) as pool:
        return pool.map(_sweep_worker, tasks, chunksize=1)


def to_dot(swap_graph: SwapGraph, label_loops: bool = True) -> str:
    """GraphViz text for a swap meta-graph: solid = double swap, dashed =
    triangle/loop exchange."""
    lines = ["graph swapspace {"]
    for i, g in enumerate(swap_graph.nodes):
        label = f"{i}:{g.loop_count()}l" if label_loops else str(i)
        lines.append(f'  n{i} [label="{label}"];')
    for i, nbrs in enumerate(swap_graph.double_adjacency):
        for j in nbrs:
            if i < j:
                lines.append(f"  n{i} -- n{j};")
    if swap_graph.triangle_adjacency is not None:
        for i, nbrs in enumerate(swap_graph.triangle_adjacency):
            for j in nbrs:
                if i < j:
                    lines.append(f"  n{i} -- n{j} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
