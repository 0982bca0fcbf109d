"""Network properties, centrality distributions and Louvain communities."""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .network import KeywordNetwork


@dataclass(frozen=True)
class NetworkProperties:
    num_nodes: int
    num_edges: int
    total_edge_weight: float
    largest_component: int


def adjacency(net: KeywordNetwork) -> dict[str, dict[str, float]]:
    adj: dict[str, dict[str, float]] = {v: {} for v in net.nodes}
    for (u, v), w in net.edges.items():
        adj[u][v] = w
        adj[v][u] = w
    return adj


def connected_components(net: KeywordNetwork) -> list[set[str]]:
    adj = adjacency(net)
    seen: set[str] = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        seen.add(start)
        comp, stack = {start}, [start]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    comp.add(nb)
                    stack.append(nb)
        comps.append(comp)
    return comps


def properties(net: KeywordNetwork) -> NetworkProperties:
    comps = connected_components(net)
    return NetworkProperties(
        num_nodes=net.num_nodes,
        num_edges=net.num_edges,
        total_edge_weight=sum(net.edges.values()),
        largest_component=max((len(c) for c in comps), default=0),
    )


def degree_centrality(net: KeywordNetwork) -> dict[str, float]:
    """Unweighted degree divided by n - 1 (0 for a single node)."""
    n = net.num_nodes
    deg = dict.fromkeys(net.nodes, 0)
    for u, v in net.edges:
        deg[u] += 1
        deg[v] += 1
    if n <= 1:
        return {v: 0.0 for v in deg}
    return {v: d / (n - 1) for v, d in deg.items()}


def node_strength(net: KeywordNetwork) -> dict[str, float]:
    strength = dict.fromkeys(net.nodes, 0)
    for (u, v), w in net.edges.items():
        strength[u] += w
        strength[v] += w
    return strength


def cdf(values) -> list[tuple[float, float]]:
    """Empirical CDF as ``(value, P(X <= value))`` over the distinct values."""
    if isinstance(values, dict):
        values = values.values()
    counts = Counter(values)
    n = sum(counts.values())
    out, cum = [], 0
    for v in sorted(counts):
        cum += counts[v]
        out.append((v, cum / n))
    return out


@dataclass
class Partition:
    assignment: dict[str, int]
    modularity: float
    seed: int = 0
    resolution: float = 1.0
    # modularity after each aggregation level, in order
    levels: list[float] = field(default_factory=list)

    @property
    def num_communities(self) -> int:
        return len(set(self.assignment.values()))

    def communities(self) -> dict[int, list[str]]:
        out: dict[int, list[str]] = defaultdict(list)
        for node in sorted(self.assignment):
            out[self.assignment[node]].append(node)
        return dict(out)


def canonical_assignment(assignment: dict[str, int]) -> dict[str, int]:
    """Renumber communities 0.. in order of their smallest node label."""
    remap: dict[int, int] = {}
    out = {}
    for node in sorted(assignment):
        c = assignment[node]
        if c not in remap:
            remap[c] = len(remap)
        out[node] = remap[c]
    return out


def modularity(net: KeywordNetwork, partition, resolution: float = 1.0) -> float:
    assignment = partition.assignment if isinstance(partition, Partition) else partition
    missing = set(net.nodes) - set(assignment)
    if missing:
        raise ValueError(f"partition does not cover {len(missing)} node(s)")
    m = sum(net.edges.values())
    if m == 0:
        return 0.0
    inside: dict[int, float] = defaultdict(float)
    tot: dict[int, float] = defaultdict(float)
    for (u, v), w in net.edges.items():
        cu, cv = assignment[u], assignment[v]
        tot[cu] += w
        tot[cv] += w
        if cu == cv:
            inside[cu] += w
    two_m = 2.0 * m
    return sum(inside.values()) / m - resolution * sum((t / two_m) ** 2 for t in tot.values())


def _local_moves(adj, degree, two_m, resolution, rng):
    """One Louvain level of greedy node moves; returns (community per node, moved?)."""
    n = len(adj)
    comm = list(range(n))
    tot = list(degree)
    order = list(range(n))
    rng.shuffle(order)
    moved_any = False
    while True:
        moves = 0
        for i in order:
            ci = comm[i]
            ki = degree[i]
            links: dict[int, float] = {}
            for j, w in adj[i].items():
                cj = comm[j]
                links[cj] = links.get(cj, 0.0) + w
            tot[ci] -= ki
            scale = resolution * ki / two_m
            best_c = ci
            best_gain = links.get(ci, 0.0) - tot[ci] * scale
            eps = 1e-12 * (ki + 1.0)
            for c, w in links.items():
                gain = w - tot[c] * scale
                if gain > best_gain + eps:
                    best_gain, best_c = gain, c
            tot[best_c] += ki
            if best_c != ci:
                comm[i] = best_c
                moves += 1
        if not moves:
            break
        moved_any = True
    return comm, moved_any


def _aggregate(adj, loops, comm):
    remap: dict[int, int] = {}
    for c in comm:
        if c not in remap:
            remap[c] = len(remap)
    k = len(remap)
    new_adj: list[dict[int, float]] = [{} for _ in range(k)]
    new_loops = [0.0] * k
    for i, nbrs in enumerate(adj):
        ci = remap[comm[i]]
        new_loops[ci] += loops[i]
        for j, w in nbrs.items():
            cj = remap[comm[j]]
            if ci == cj:
                if i < j:
                    new_loops[ci] += w
            else:
                new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w
    return new_adj, new_loops, [remap[c] for c in comm]


def _level_modularity(loops, degree, m, resolution):
    two_m = 2.0 * m
    return sum(loops) / m - resolution * sum((d / two_m) ** 2 for d in degree)


def louvain(net: KeywordNetwork, seed: int = 0, resolution: float = 1.0) -> Partition:
    """Weighted two-phase Louvain modularity optimisation.

    The visiting order of each level is shuffled once with a generator seeded
    by ``seed`` and then kept fixed for all passes of that level, so results
    are reproducible for a given (network, seed, resolution).
    """
    labels = sorted(net.nodes)
    n = len(labels)
    m = float(sum(net.edges.values()))
    if n == 0:
        return Partition({}, 0.0, seed, resolution, [])
    if m == 0:
        return Partition({v: i for i, v in enumerate(labels)}, 0.0, seed, resolution, [])

    index = {v: i for i, v in enumerate(labels)}
    adj: list[dict[int, float]] = [{} for _ in range(n)]
    for (u, v), w in sorted(net.edges.items()):
        i, j = index[u], index[v]
        adj[i][j] = adj[i].get(j, 0.0) + w
        adj[j][i] = adj[j].get(i, 0.0) + w
    loops = [0.0] * n
    membership = list(range(n))
    rng = random.Random(seed)
    two_m = 2.0 * m
    levels = []
    while True:
        degree = [2.0 * loops[i] + sum(adj[i].values()) for i in range(len(adj))]
        comm, moved = _local_moves(adj, degree, two_m, resolution, rng)
        if not moved:
            break
        adj, loops, mapping = _aggregate(adj, loops, comm)
        membership = [mapping[c] for c in membership]
        degree = [2.0 * loops[i] + sum(adj[i].values()) for i in range(len(adj))]
        levels.append(_level_modularity(loops, degree, m, resolution))
        if len(adj) == 1:
            break

    assignment = canonical_assignment({labels[i]: membership[i] for i in range(n)})
    q = modularity(net, assignment, resolution)
    return Partition(assignment, q, seed, resolution, levels)


@dataclass(frozen=True)
class Community:
    community_id: int
    size: int
    top_nodes: tuple[str, ...]
    top_strengths: tuple[float, ...]


@dataclass(frozen=True)
class CommunityReport:
    communities: tuple[Community, ...]
    coverage: float
    covered_fraction: float
    num_nodes: int
    num_communities: int
    modularity: float
    seed: int
    top_k: int


def top_nodes(values: dict[str, float], members, k: int) -> list[tuple[str, float]]:
    ranked = sorted(((values[v], v) for v in members), key=lambda t: (-t[0], t[1]))
    return [(v, s) for s, v in ranked[:k]]


def community_report(net: KeywordNetwork, partition: Partition, coverage: float = 0.9, top_k: int = 5) -> CommunityReport:
    """Largest communities until their cumulative node share exceeds ``coverage``."""
    groups = partition.communities()
    strength = node_strength(net)
    n = sum(len(g) for g in groups.values())
    order = sorted(groups, key=lambda c: (-len(groups[c]), c))
    listed, covered = [], 0
    for c in order:
        members = groups[c]
        best = top_nodes(strength, members, top_k)
        listed.append(Community(c, len(members), tuple(v for v, _ in best), tuple(s for _, s in best)))
        covered += len(members)
        if covered / n > coverage:
            break
    return CommunityReport(
        communities=tuple(listed),
        coverage=coverage,
        covered_fraction=covered / n if n else 0.0,
        num_nodes=n,
        num_communities=len(groups),
        modularity=partition.modularity,
        seed=partition.seed,
        top_k=top_k,
    )
