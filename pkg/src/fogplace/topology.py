"""PON fog graph: per-cell passive stars around AWGR hubs, an inter-cell
hub mesh, and one uplink per cell to the OLT.

The graph is built once and is immutable afterwards; every ordered node
pair gets a precomputed minimum-hop path with a deterministic
lexicographic tie-break, so repeated builds of the same config produce
bit-identical path tables.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering

from .errors import InvalidConfigError, NodeNotFoundError


class NodeKind(Enum):
    ACCESS_ONU = "acc"
    SERVER_ONU = "srv"
    AWGR_HUB = "hub"
    OLT = "olt"


# Sort order used everywhere a canonical node order is needed.
_KIND_RANK = {
    NodeKind.ACCESS_ONU: 0,
    NodeKind.SERVER_ONU: 1,
    NodeKind.AWGR_HUB: 2,
    NodeKind.OLT: 3,
}


@total_ordering
@dataclass(frozen=True)
class NodeId:
    """Typed node identity: (kind, cell, index) is unique; the OLT has no cell."""

    kind: NodeKind
    cell: int | None
    index: int

    def sort_key(self) -> tuple[int, int, int]:
        return (_KIND_RANK[self.kind], -1 if self.cell is None else self.cell, self.index)

    def __lt__(self, other: "NodeId") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.kind is NodeKind.OLT:
            return "olt"
        if self.kind is NodeKind.AWGR_HUB:
            return f"hub_c{self.cell}"
        return f"{self.kind.value}_c{self.cell}_i{self.index}"


_NODE_RE = re.compile(r"^(acc|srv)_c(\d+)_i(\d+)$|^hub_c(\d+)$|^olt$")


def node_from_str(text: str) -> NodeId:
    """Parse the compact node form used in configs and reports."""
    m = _NODE_RE.match(text)
    if not m:
        raise InvalidConfigError(f"unrecognized node id {text!r}")
    if text == "olt":
        return NodeId(NodeKind.OLT, None, 0)
    if m.group(4) is not None:
        return NodeId(NodeKind.AWGR_HUB, int(m.group(4)), 0)
    kind = NodeKind.ACCESS_ONU if m.group(1) == "acc" else NodeKind.SERVER_ONU
    return NodeId(kind, int(m.group(2)), int(m.group(3)))


@dataclass(frozen=True)
class Link:
    """Undirected physical link with an aggregate capacity
    (wavelengths x per-wavelength rate)."""

    a: NodeId
    b: NodeId
    capacity_gbps: float

    def __post_init__(self):
        if self.b < self.a:
            lo, hi = self.b, self.a
            object.__setattr__(self, "a", lo)
            object.__setattr__(self, "b", hi)
        if self.capacity_gbps <= 0:
            raise InvalidConfigError("link capacity must be positive")

    def other(self, n: NodeId) -> NodeId:
        if n == self.a:
            return self.b
        if n == self.b:
            return self.a
        raise NodeNotFoundError(f"{n} is not an endpoint of {self}")

    def key(self) -> tuple:
        return (self.a.sort_key(), self.b.sort_key())

    def __str__(self) -> str:
        return f"{self.a}--{self.b}"


@dataclass
class Topology:
    """Immutable node/link graph plus the precomputed ordered-pair path table."""

    cells: int
    nodes: tuple[NodeId, ...]
    links: tuple[Link, ...]
    # ordered (src, dst) -> node sequence src..dst of the unique canonical
    # minimum-hop path
    path_table: dict[tuple[NodeId, NodeId], tuple[NodeId, ...]]
    _adj: dict[NodeId, tuple[NodeId, ...]] = field(default_factory=dict, repr=False)
    _link_by_pair: dict[frozenset, Link] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._adj:
            adj: dict[NodeId, list[NodeId]] = {n: [] for n in self.nodes}
            for lk in self.links:
                adj[lk.a].append(lk.b)
                adj[lk.b].append(lk.a)
            self._adj = {n: tuple(sorted(v)) for n, v in adj.items()}
            self._link_by_pair = {frozenset((lk.a, lk.b)): lk for lk in self.links}

    def neighbors(self, n: NodeId) -> tuple[NodeId, ...]:
        try:
            return self._adj[n]
        except KeyError:
            raise NodeNotFoundError(f"unknown node {n}") from None

    def link_between(self, a: NodeId, b: NodeId) -> Link:
        try:
            return self._link_by_pair[frozenset((a, b))]
        except KeyError:
            raise NodeNotFoundError(f"no link {a}--{b}") from None

    def servers(self) -> tuple[NodeId, ...]:
        return tuple(n for n in self.nodes if n.kind is NodeKind.SERVER_ONU)

    def access_onus(self) -> tuple[NodeId, ...]:
        return tuple(n for n in self.nodes if n.kind is NodeKind.ACCESS_ONU)

    def olt(self) -> NodeId:
        return NodeId(NodeKind.OLT, None, 0)

    def path_nodes(self, s: NodeId, d: NodeId) -> tuple[NodeId, ...]:
        """Node sequence of the stored canonical path from s to d."""
        if s == d:
            raise InvalidConfigError("path endpoints must differ")
        try:
            return self.path_table[(s, d)]
        except KeyError:
            missing = s if s not in self._adj else d
            raise NodeNotFoundError(f"unknown node {missing}") from None

    def path_links(self, s: NodeId, d: NodeId) -> tuple[Link, ...]:
        seq = self.path_nodes(s, d)
        return tuple(self.link_between(a, b) for a, b in zip(seq, seq[1:]))


def shortest_path(t: Topology, s: NodeId, d: NodeId) -> tuple[Link, ...]:
    """Stored canonical minimum-hop path between two distinct nodes, as links."""
    return t.path_links(s, d)


def _bfs_dist(adj: dict[NodeId, tuple[NodeId, ...]], root: NodeId) -> dict[NodeId, int]:
    dist = {root: 0}
    q = deque([root])
    while q:
        cur = q.popleft()
        for nxt in adj[cur]:
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                q.append(nxt)
    return dist


def _canonical_path(
    adj: dict[NodeId, tuple[NodeId, ...]],
    dist_maps: dict[NodeId, dict[NodeId, int]],
    s: NodeId,
    d: NodeId,
) -> tuple[NodeId, ...]:
    # Lexicographically smallest node sequence among all minimum-hop paths:
    # walk from s, always taking the smallest neighbor that stays on some
    # shortest path (neighbor lists are pre-sorted).
    ds, dd = dist_maps[s], dist_maps[d]
    total = ds[d]
    path = [s]
    cur = s
    while cur != d:
        cur = next(
            n for n in adj[cur]
            if ds.get(n) == ds[cur] + 1 and ds[cur] + 1 + dd.get(n, 1 << 30) == total
        )
        path.append(cur)
    return tuple(path)


def build_topology(
    cells: int,
    servers_per_cell: int,
    access_onus_per_cell: int,
    link_capacity_gbps: float = 1280.0,
) -> Topology:
    """Build the fog graph: per cell a star of access and server ONUs around
    an AWGR hub, a full mesh between hubs, and one hub-to-OLT uplink per cell.
    """
    if cells < 1 or servers_per_cell < 1 or access_onus_per_cell < 1:
        raise InvalidConfigError("cell, server and access-ONU counts must all be >= 1")
    if link_capacity_gbps <= 0:
        raise InvalidConfigError("link capacity must be positive")

    nodes: list[NodeId] = []
    links: list[Link] = []
    olt = NodeId(NodeKind.OLT, None, 0)
    hubs = []
    for c in range(cells):
        hub = NodeId(NodeKind.AWGR_HUB, c, 0)
        hubs.append(hub)
        nodes.append(hub)
        for i in range(access_onus_per_cell):
            onu = NodeId(NodeKind.ACCESS_ONU, c, i)
            nodes.append(onu)
            links.append(Link(onu, hub, link_capacity_gbps))
        for i in range(servers_per_cell):
            srv = NodeId(NodeKind.SERVER_ONU, c, i)
            nodes.append(srv)
            links.append(Link(srv, hub, link_capacity_gbps))
    nodes.append(olt)
    for i in range(cells):
        for j in range(i + 1, cells):
            links.append(Link(hubs[i], hubs[j], link_capacity_gbps))
    for hub in hubs:
        links.append(Link(hub, olt, link_capacity_gbps))

    nodes_sorted = tuple(sorted(nodes))
    links_sorted = tuple(sorted(links, key=Link.key))

    adj: dict[NodeId, list[NodeId]] = {n: [] for n in nodes_sorted}
    for lk in links_sorted:
        adj[lk.a].append(lk.b)
        adj[lk.b].append(lk.a)
    adj_sorted = {n: tuple(sorted(v)) for n, v in adj.items()}

    dist_maps = {n: _bfs_dist(adj_sorted, n) for n in nodes_sorted}
    path_table: dict[tuple[NodeId, NodeId], tuple[NodeId, ...]] = {}
    for s in nodes_sorted:
        for d in nodes_sorted:
            if s != d:
                path_table[(s, d)] = _canonical_path(adj_sorted, dist_maps, s, d)

    return Topology(cells=cells, nodes=nodes_sorted, links=links_sorted, path_table=path_table)
