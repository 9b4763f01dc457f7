"""Relay-network model: node placement, link state, perturbation, edge costs.

The network is a complete graph over one deep-space probe, one ground
station, and a configurable number of relay satellites.  Every link keeps
a default (build-time) distance and quality plus a current value that a
per-step perturbation jitters around the default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ConfigurationError

SPEED_OF_LIGHT_KM_S = 299_792.458

# Fixed node ids: the source probe and the destination ground station are
# always present; relays take the remaining ids.
PROBE_ID = 0
GROUND_ID = 1


class NodeKind(Enum):
    PROBE = "probe"
    RELAY = "relay"
    GROUND = "ground"


class CostKind(Enum):
    """Edge-cost flavors used by the shortest-path protocols."""

    TRANSMISSION_TIME = "transmission_time"
    QUALITY_COMPLEMENT = "quality_complement"


@dataclass(frozen=True)
class Node:
    id: int
    kind: NodeKind
    x: float
    y: float

    @property
    def position(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class NetworkConfig:
    """Geometry and link-quality parameters for network generation.

    Distances are kilometers.  Relays are placed uniformly inside a
    rectangle spanning the probe-to-ground axis; link qualities are drawn
    from Beta(beta_a, beta_b).
    """

    relay_count: int = 10
    end_to_end_km: float = 1.27e9
    min_coord_km: float = 1.0e4
    beta_a: float = 3.0
    beta_b: float = 2.0

    def validate(self) -> None:
        if self.relay_count < 1:
            raise ConfigurationError(
                f"relay_count must be >= 1, got {self.relay_count}"
            )
        if self.min_coord_km <= 0:
            raise ConfigurationError(
                f"min_coord_km must be > 0, got {self.min_coord_km}"
            )
        if self.end_to_end_km <= 2 * self.min_coord_km:
            raise ConfigurationError(
                "end_to_end_km must exceed 2 * min_coord_km, got "
                f"{self.end_to_end_km} vs {self.min_coord_km}"
            )
        if self.beta_a <= 0 or self.beta_b <= 0:
            raise ConfigurationError(
                f"beta shape parameters must be > 0, got ({self.beta_a}, {self.beta_b})"
            )


def euclidean_distance(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Plane distance between two (x, y) points in kilometers."""
    return math.hypot(a[0] - b[0], a[1] - b[1])


def sample_quality(rng: np.random.Generator, a: float = 3.0, b: float = 2.0) -> float:
    """Draw one link quality from Beta(a, b); values land in [0, 1]."""
    if a <= 0 or b <= 0:
        raise ConfigurationError(f"beta shape parameters must be > 0, got ({a}, {b})")
    return float(rng.beta(a, b))


def place_nodes(config: NetworkConfig, rng: np.random.Generator) -> list[Node]:
    """Place the probe, the ground station, and uniform random relays.

    Ground sits at the origin and the probe at (end_to_end_km, 0), so their
    separation equals the configured end-to-end span exactly.  Relay x values
    stay min_coord_km clear of both endpoints; relay y spans half the
    end-to-end distance on either side of the axis.
    """
    config.validate()
    e = config.end_to_end_km
    nodes = [
        Node(PROBE_ID, NodeKind.PROBE, e, 0.0),
        Node(GROUND_ID, NodeKind.GROUND, 0.0, 0.0),
    ]
    xs = rng.uniform(config.min_coord_km, e - config.min_coord_km, config.relay_count)
    ys = rng.uniform(-e / 2.0, e / 2.0, config.relay_count)
    for k in range(config.relay_count):
        nodes.append(Node(2 + k, NodeKind.RELAY, float(xs[k]), float(ys[k])))
    return nodes


@dataclass(frozen=True)
class LinkState:
    """Read-only snapshot of one undirected link."""

    endpoints: tuple[int, int]
    default_distance: float
    current_distance: float
    default_quality: float
    current_quality: float


@dataclass
class NetworkState:
    """Complete graph over the placed nodes with default and current link state.

    Link attributes live in flat arrays indexed by canonical pair order
    (i < j); ``link_index_matrix[a, b]`` maps an unordered node pair to its
    array slot.
    """

    nodes: list[Node]
    link_pairs: list[tuple[int, int]]
    link_index_matrix: np.ndarray
    default_distance: np.ndarray
    current_distance: np.ndarray
    default_quality: np.ndarray
    current_quality: np.ndarray
    min_coord_km: float
    probe_id: int = PROBE_ID
    ground_id: int = GROUND_ID

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def link_count(self) -> int:
        return len(self.link_pairs)

    @property
    def has_relays(self) -> bool:
        return any(n.kind is NodeKind.RELAY for n in self.nodes)

    @property
    def direct_index(self) -> int:
        """Array slot of the direct probe-to-ground link."""
        return self.link_index(self.probe_id, self.ground_id)

    def link_index(self, a: int, b: int) -> int:
        if a == b:
            raise ValueError(f"no self link on node {a}")
        idx = int(self.link_index_matrix[a, b])
        return idx

    def link(self, a: int, b: int) -> LinkState:
        i = self.link_index(a, b)
        lo, hi = min(a, b), max(a, b)
        return LinkState(
            endpoints=(lo, hi),
            default_distance=float(self.default_distance[i]),
            current_distance=float(self.current_distance[i]),
            default_quality=float(self.default_quality[i]),
            current_quality=float(self.current_quality[i]),
        )


def build_network(
    nodes: list[Node],
    rng: np.random.Generator,
    config: NetworkConfig | None = None,
) -> NetworkState:
    """Assemble the complete graph: geometric distances, Beta link qualities.

    Qualities are drawn in one vectorized call over canonical pair order,
    so the same seed always yields the same network.
    """
    cfg = config if config is not None else NetworkConfig()
    n = len(nodes)
    if n < 2:
        raise ConfigurationError(f"need at least 2 nodes, got {n}")
    if sorted(node.id for node in nodes) != list(range(n)):
        raise ConfigurationError("node ids must be consecutive from 0")
    kinds = [node.kind for node in nodes]
    if kinds.count(NodeKind.PROBE) != 1 or kinds.count(NodeKind.GROUND) != 1:
        raise ConfigurationError("exactly one probe and one ground station required")

    by_id = sorted(nodes, key=lambda node: node.id)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m = len(pairs)
    index = np.full((n, n), -1, dtype=np.int64)
    dist = np.empty(m, dtype=np.float64)
    for k, (i, j) in enumerate(pairs):
        index[i, j] = k
        index[j, i] = k
        dist[k] = euclidean_distance(by_id[i].position, by_id[j].position)
    quality = rng.beta(cfg.beta_a, cfg.beta_b, size=m).astype(np.float64)

    return NetworkState(
        nodes=by_id,
        link_pairs=pairs,
        link_index_matrix=index,
        default_distance=dist,
        current_distance=dist.copy(),
        default_quality=quality,
        current_quality=quality.copy(),
        min_coord_km=cfg.min_coord_km,
        probe_id=next(node.id for node in by_id if node.kind is NodeKind.PROBE),
        ground_id=next(node.id for node in by_id if node.kind is NodeKind.GROUND),
    )


def perturb(
    network: NetworkState, rng: np.random.Generator, sigma_frac: float
) -> NetworkState:
    """Redraw current link state around the defaults, in place.

    Each value is Normal(default, sigma_frac * default); qualities clamp to
    [0, 1] and distances to >= min_coord_km.  sigma_frac = 0 reproduces the
    defaults bit for bit.  Draw order is fixed (qualities, then distances)
    to keep runs reproducible.
    """
    if sigma_frac < 0:
        raise ConfigurationError(f"sigma_frac must be >= 0, got {sigma_frac}")
    m = network.link_count
    zq = rng.standard_normal(m)
    zd = rng.standard_normal(m)
    q = network.default_quality * (1.0 + sigma_frac * zq)
    np.clip(q, 0.0, 1.0, out=network.current_quality)
    d = network.default_distance * (1.0 + sigma_frac * zd)
    np.clip(d, network.min_coord_km, None, out=network.current_distance)
    return network


def reset(network: NetworkState) -> NetworkState:
    """Restore current link state to the build-time defaults, in place."""
    np.copyto(network.current_quality, network.default_quality)
    np.copyto(network.current_distance, network.default_distance)
    return network


def edge_cost_vector(network: NetworkState, kind: CostKind) -> np.ndarray:
    """Per-link costs of the given kind, with the direct link penalized.

    The probe-to-ground link costs the sum of every other link's cost plus
    one, which strictly exceeds the cost of any simple relay path, so
    shortest-path routing only falls back to it when no alternative exists.
    """
    if kind is CostKind.TRANSMISSION_TIME:
        base = network.current_distance / SPEED_OF_LIGHT_KM_S
    elif kind is CostKind.QUALITY_COMPLEMENT:
        base = 1.0 - network.current_quality
    else:
        raise ValueError(f"unknown cost kind: {kind!r}")
    costs = base.copy()
    di = network.direct_index
    costs[di] = (base.sum() - base[di]) + 1.0
    return costs


def edge_cost(network: NetworkState, a: int, b: int, kind: CostKind) -> float:
    """Cost of the single link (a, b) under the given kind."""
    return float(edge_cost_vector(network, kind)[network.link_index(a, b)])
