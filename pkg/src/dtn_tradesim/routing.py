"""Next-hop strategies: two shortest-path variants and greedy store-and-forward."""

from __future__ import annotations

import heapq
import logging
from collections.abc import Iterable, Sequence
from enum import Enum

from .network import CostKind, NetworkState, edge_cost_vector

logger = logging.getLogger(__name__)

# A route is the ordered node-id sequence from source to destination.
Route = tuple[int, ...]


class ProtocolKind(Enum):
    BUNDLE = "bundle"
    DISTANCE_DIJKSTRA = "distance_dijkstra"
    QUALITY_DIJKSTRA = "quality_dijkstra"


PROTOCOL_COST_KIND = {
    ProtocolKind.DISTANCE_DIJKSTRA: CostKind.TRANSMISSION_TIME,
    ProtocolKind.QUALITY_DIJKSTRA: CostKind.QUALITY_COMPLEMENT,
}


def dijkstra_path(network: NetworkState, kind: CostKind, src: int, dst: int) -> Route:
    """Minimum-cost simple path from src to dst under the given cost kind.

    Heap entries carry (cost, hop count, path), so equal-cost alternatives
    resolve to the fewest hops and remaining ties to the lexicographically
    smallest node sequence.  Preferring fewer hops keeps step-by-step
    replanning loop-free even when whole neighborhoods tie at zero cost;
    costs are non-negative, so the first time dst pops it holds the global
    optimum.
    """
    if src == dst:
        raise ValueError(f"src and dst must differ, got {src}")
    n = network.node_count
    if not (0 <= src < n and 0 <= dst < n):
        raise ValueError(f"node ids out of range: src={src}, dst={dst}")
    cost_row = _cost_rows(network, kind)

    best: list[tuple[float, int, Route] | None] = [None] * n
    start = (0.0, 0, (src,))
    best[src] = start
    heap = [start]
    while heap:
        entry = heapq.heappop(heap)
        cost, hops, path = entry
        u = path[-1]
        if u == dst:
            return path
        if entry != best[u]:
            continue  # stale entry
        row = cost_row[u]
        for v in range(n):
            if v == u or v in path:
                continue
            candidate = (cost + row[v], hops + 1, path + (v,))
            if best[v] is None or candidate < best[v]:
                best[v] = candidate
                heapq.heappush(heap, candidate)
    raise RuntimeError(f"no path from {src} to {dst}")  # unreachable: complete graph


def _cost_rows(network: NetworkState, kind: CostKind) -> list[list[float]]:
    """Dense symmetric cost matrix as plain lists for fast scalar access."""
    vec = edge_cost_vector(network, kind)
    n = network.node_count
    rows = [[0.0] * n for _ in range(n)]
    for k, (i, j) in enumerate(network.link_pairs):
        c = float(vec[k])
        rows[i][j] = c
        rows[j][i] = c
    return rows


def _bundle_next_hop(network: NetworkState, current: int, dst: int) -> int:
    """Greedy hop choice: best current-quality link among forward candidates.

    Candidates are the nodes strictly closer to dst than the current node by
    build-time geometry (dst itself counts, at distance zero); judging
    progress against the fixed geometry keeps every route loop-free.  From
    the probe the direct hop to the ground station is excluded whenever
    relays exist.  An empty candidate set falls back to dst.
    """
    index = network.link_index_matrix
    dd = network.default_distance
    cur_d = float(dd[index[current, dst]])
    exclude_ground = current == network.probe_id and network.has_relays
    best = -1
    best_q = -1.0
    for v in range(network.node_count):
        if v == current:
            continue
        d_v = 0.0 if v == dst else float(dd[index[v, dst]])
        if d_v >= cur_d:
            continue
        if exclude_ground and v == network.ground_id:
            continue
        q = float(network.current_quality[index[current, v]])
        if q > best_q:  # strict: quality ties keep the lowest node id
            best_q = q
            best = v
    if best < 0:
        logger.warning(
            "degenerate topology: no forward candidate from node %d toward %d, "
            "falling back to the direct hop",
            current,
            dst,
        )
        return dst
    return best


def next_hop(
    network: NetworkState, protocol: ProtocolKind, current: int, dst: int
) -> int:
    """Single forwarding decision for one protocol under the current state."""
    if current == dst:
        raise ValueError(f"current and dst must differ, got {current}")
    if protocol is ProtocolKind.BUNDLE:
        return _bundle_next_hop(network, current, dst)
    kind = PROTOCOL_COST_KIND[protocol]
    return dijkstra_path(network, kind, current, dst)[1]


def most_frequent_path(routes: Iterable[Sequence[int]]) -> Route:
    """Most common route in the collection; ties keep the first seen."""
    counts: dict[Route, int] = {}
    for route in routes:
        key = tuple(route)
        counts[key] = counts.get(key, 0) + 1
    if not counts:
        raise ValueError("route collection is empty")
    return max(counts.items(), key=lambda kv: kv[1])[0]
