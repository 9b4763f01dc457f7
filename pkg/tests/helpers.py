"""Shared test fixtures: hand-built networks and brute-force oracles."""

from __future__ import annotations

import itertools
import math

import numpy as np

from dtn_tradesim.network import (
    CostKind,
    NetworkConfig,
    NetworkState,
    Node,
    NodeKind,
    build_network,
    edge_cost_vector,
    place_nodes,
    reset,
)


def rng(seed: int = 0) -> np.random.Generator:
    return np.random.default_rng(seed)


def build_random_network(
    seed: int,
    relay_count: int = 10,
    end_to_end_km: float = 1.27e9,
    min_coord_km: float = 1.0e4,
    beta_a: float = 3.0,
    beta_b: float = 2.0,
) -> NetworkState:
    cfg = NetworkConfig(
        relay_count=relay_count,
        end_to_end_km=end_to_end_km,
        min_coord_km=min_coord_km,
        beta_a=beta_a,
        beta_b=beta_b,
    )
    r = rng(seed)
    return build_network(place_nodes(cfg, r), r, cfg)


def build_custom_network(
    positions: list[tuple[NodeKind, float, float]],
    seed: int = 0,
    min_coord_km: float = 1.0,
) -> NetworkState:
    """Network from explicit (kind, x, y) rows; ids follow list order."""
    nodes = [Node(i, kind, x, y) for i, (kind, x, y) in enumerate(positions)]
    cfg = NetworkConfig(min_coord_km=min_coord_km)
    return build_network(nodes, rng(seed), cfg)


def set_link(
    network: NetworkState,
    a: int,
    b: int,
    quality: float | None = None,
    distance: float | None = None,
) -> None:
    """Pin a link's default (and current) quality or distance."""
    i = network.link_index(a, b)
    if quality is not None:
        network.default_quality[i] = quality
    if distance is not None:
        network.default_distance[i] = distance
    reset(network)


def brute_force_min_cost(
    network: NetworkState, kind: CostKind, src: int, dst: int
) -> float:
    """Exhaustive minimum simple-path cost; independent of the router."""
    costs = edge_cost_vector(network, kind)
    idx = network.link_index_matrix
    others = [v for v in range(network.node_count) if v != src and v != dst]
    best = math.inf
    for r in range(len(others) + 1):
        for mids in itertools.permutations(others, r):
            path = (src,) + mids + (dst,)
            total = sum(
                float(costs[idx[path[i], path[i + 1]]]) for i in range(len(path) - 1)
            )
            best = min(best, total)
    return best


def path_cost(network: NetworkState, kind: CostKind, path) -> float:
    costs = edge_cost_vector(network, kind)
    idx = network.link_index_matrix
    return sum(float(costs[idx[path[i], path[i + 1]]]) for i in range(len(path) - 1))


def distance_to(network: NetworkState, node: int, target: int) -> float:
    """Build-time geometric distance from node to target (0 for the target)."""
    if node == target:
        return 0.0
    return float(
        network.default_distance[network.link_index_matrix[node, target]]
    )
