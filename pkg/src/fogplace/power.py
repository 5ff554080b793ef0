"""Device power models and the weighted network/processing aggregates.

Servers and proportional devices interpolate linearly between their idle
and maximum draw; server-side ONUs are on/off transceivers; AWGR hubs are
passive and draw nothing.  The report splits total power into a
networking part (access ONUs plus the OLT) and a processing part (servers
plus their attached ONUs) and weights them with the scenario factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .errors import ContractError, InvalidConfigError, PowerDomainError
from .topology import NodeId, NodeKind, Topology


class OnuProfile(Enum):
    ON_OFF = "on_off"
    PROPORTIONAL = "proportional"


@dataclass(frozen=True)
class ServerSpec:
    max_w: float
    idle_w: float
    cpu_ghz: float
    ram_gb: float

    def __post_init__(self):
        if not (0 <= self.idle_w <= self.max_w):
            raise InvalidConfigError("server idle power must lie in [0, max]")
        if self.cpu_ghz <= 0 or self.ram_gb <= 0:
            raise InvalidConfigError("server capacities must be positive")

    @property
    def ram_mb(self) -> float:
        return self.ram_gb * 1024.0


@dataclass(frozen=True)
class OnuSpec:
    max_w: float
    idle_w: float
    rate_gbps: float
    profile: OnuProfile

    def __post_init__(self):
        if not (0 <= self.idle_w <= self.max_w):
            raise InvalidConfigError("ONU idle power must lie in [0, max]")
        if self.rate_gbps <= 0:
            raise InvalidConfigError("ONU rate must be positive")


@dataclass(frozen=True)
class OltSpec:
    max_w: float
    idle_w: float
    rate_gbps: float

    def __post_init__(self):
        if not (0 <= self.idle_w <= self.max_w):
            raise InvalidConfigError("OLT idle power must lie in [0, max]")
        if self.rate_gbps <= 0:
            raise InvalidConfigError("OLT rate must be positive")


@dataclass(frozen=True)
class DeviceSpecs:
    """Per-cell server specs plus the shared ONU/OLT models.

    Servers within one cell are identical; ``cell_servers[c]`` is the spec of
    every server in cell ``c``.
    """

    cell_servers: tuple[ServerSpec, ...]
    access_onu: OnuSpec
    server_onu: OnuSpec
    olt: OltSpec

    def server_spec(self, node: NodeId) -> ServerSpec:
        if node.kind is not NodeKind.SERVER_ONU:
            raise ContractError(f"{node} is not a server attachment")
        if node.cell is None or node.cell >= len(self.cell_servers):
            raise InvalidConfigError(f"no server spec for cell {node.cell}")
        return self.cell_servers[node.cell]


# Published SPECpower-style profiles of the three default server classes
# (Dell PowerEdge R620 / R740, Hitachi RS220) and GPON-class ONU/OLT gear.
DEFAULT_CELL_SERVERS = (
    ServerSpec(max_w=243.0, idle_w=54.1, cpu_ghz=2.6, ram_gb=24.0),
    ServerSpec(max_w=457.0, idle_w=301.0, cpu_ghz=2.5, ram_gb=16.0),
    ServerSpec(max_w=325.0, idle_w=104.0, cpu_ghz=2.4, ram_gb=32.0),
)
DEFAULT_ONU_MAX_W = 2.5
DEFAULT_ONU_IDLE_W = 1.5
DEFAULT_ONU_RATE_GBPS = 10.0
DEFAULT_OLT = OltSpec(max_w=1940.0, idle_w=1746.0, rate_gbps=8600.0)


def default_specs(cells: int = 3) -> DeviceSpecs:
    """Default heterogeneous specs; cells beyond the third reuse the trio cyclically."""
    servers = tuple(DEFAULT_CELL_SERVERS[c % 3] for c in range(cells))
    return DeviceSpecs(
        cell_servers=servers,
        access_onu=OnuSpec(DEFAULT_ONU_MAX_W, DEFAULT_ONU_IDLE_W,
                           DEFAULT_ONU_RATE_GBPS, OnuProfile.PROPORTIONAL),
        server_onu=OnuSpec(DEFAULT_ONU_MAX_W, DEFAULT_ONU_IDLE_W,
                           DEFAULT_ONU_RATE_GBPS, OnuProfile.ON_OFF),
        olt=DEFAULT_OLT,
    )


def server_power(spec: ServerSpec, assigned_cpu_ghz: float, active: bool) -> float:
    """Linear idle-to-max draw in CPU utilization; a switched-off server draws 0 W."""
    if assigned_cpu_ghz < 0:
        raise PowerDomainError("negative CPU load")
    if assigned_cpu_ghz > spec.cpu_ghz:
        raise PowerDomainError(
            f"CPU load {assigned_cpu_ghz} GHz exceeds capacity {spec.cpu_ghz} GHz")
    if not active:
        if assigned_cpu_ghz > 0:
            raise ContractError("inactive server cannot carry load")
        return 0.0
    return spec.idle_w + (spec.max_w - spec.idle_w) * (assigned_cpu_ghz / spec.cpu_ghz)


def onu_power(spec: OnuSpec, traffic_gbps: float, active: bool) -> float:
    """On/off ONUs draw max when on; proportional ONUs interpolate on traffic."""
    if traffic_gbps < 0:
        raise PowerDomainError("negative ONU traffic")
    if traffic_gbps > spec.rate_gbps:
        raise PowerDomainError(
            f"ONU traffic {traffic_gbps} Gbps exceeds rate {spec.rate_gbps} Gbps")
    if spec.profile is OnuProfile.ON_OFF:
        return spec.max_w if active else 0.0
    return spec.idle_w + (spec.max_w - spec.idle_w) * (traffic_gbps / spec.rate_gbps)


def olt_power(spec: OltSpec, traffic_gbps: float) -> float:
    """The OLT is always powered; load grows its draw linearly up to max."""
    if traffic_gbps < 0:
        raise PowerDomainError("negative OLT traffic")
    if traffic_gbps > spec.rate_gbps:
        raise PowerDomainError(
            f"OLT traffic {traffic_gbps} Gbps exceeds rate {spec.rate_gbps} Gbps")
    return spec.idle_w + (spec.max_w - spec.idle_w) * (traffic_gbps / spec.rate_gbps)


@dataclass
class PowerReport:
    """Power breakdown of one placement under recorded objective weights."""

    alpha: float
    beta: float
    network_power_w: float
    processing_power_w: float
    objective_w: float
    per_device_w: dict[NodeId, float]
    per_cell_w: dict[int, float]
    server_utilization: dict[NodeId, float]

    @property
    def total_power_w(self) -> float:
        """Unweighted total draw (networking plus processing)."""
        return self.network_power_w + self.processing_power_w


def _node_through_traffic(flows, nodes: Iterable[NodeId]) -> dict[NodeId, float]:
    """Demand of every routed commodity, summed onto each node its path visits.

    Uses fsum so the result is independent of commodity enumeration order.
    """
    terms: dict[NodeId, list[float]] = {n: [] for n in nodes}
    if flows is not None:
        for rc in flows.routed:
            for n in rc.path:
                if n in terms:
                    terms[n].append(rc.demand_gbps)
    return {n: math.fsum(ts) for n, ts in terms.items()}


def evaluate(
    placement,
    flows,
    workload,
    topo: Topology,
    specs: DeviceSpecs,
    alpha: float = 1.0,
    beta: float = 1.0,
) -> PowerReport:
    """Aggregate device powers for a feasible placement and routed flows.

    Processing power covers servers plus their on/off attachment ONUs;
    networking power covers the proportional access ONUs and the OLT.
    """
    assign: Mapping[int, NodeId] = getattr(placement, "assign", placement) or {}
    if len(specs.cell_servers) < topo.cells:
        raise InvalidConfigError(
            f"{topo.cells} cells but specs for {len(specs.cell_servers)}")

    vm_by_id = {vm.id: vm for vm in workload.vms} if workload is not None else {}
    if set(assign) != set(vm_by_id):
        raise ContractError("placement does not cover exactly the workload's VMs")
    if flows is not None and flows.capacity_violations:
        raise ContractError(
            "flows violate link capacities: " + "; ".join(flows.capacity_violations))

    servers = topo.servers()
    server_set = set(servers)
    cpu_terms: dict[NodeId, list[float]] = {s: [] for s in servers}
    for vm_id, node in assign.items():
        if node not in server_set:
            raise ContractError(f"VM {vm_id} assigned to non-server node {node}")
        cpu_terms[node].append(vm_by_id[vm_id].cpu_ghz)
    load_ghz = {s: math.fsum(ts) for s, ts in cpu_terms.items()}

    through = _node_through_traffic(flows, topo.nodes)

    # fsum keeps every aggregate independent of accumulation order, so
    # placements that differ only by permuting identical servers report
    # bit-identical power.
    per_device: dict[NodeId, float] = {}
    utilization: dict[NodeId, float] = {}
    network_terms: list[float] = []
    processing_terms: list[float] = []
    for node in topo.nodes:
        if node.kind is NodeKind.SERVER_ONU:
            spec = specs.server_spec(node)
            active = load_ghz[node] > 0 or through[node] > 0
            w = server_power(spec, load_ghz[node], load_ghz[node] > 0)
            w += onu_power(specs.server_onu, min(through[node], specs.server_onu.rate_gbps)
                           if active else 0.0, active)
            processing_terms.append(w)
            utilization[node] = load_ghz[node] / spec.cpu_ghz
        elif node.kind is NodeKind.ACCESS_ONU:
            w = onu_power(specs.access_onu, through[node], True)
            network_terms.append(w)
        elif node.kind is NodeKind.OLT:
            w = olt_power(specs.olt, through[node])
            network_terms.append(w)
        else:  # passive AWGR hub
            w = 0.0
        per_device[node] = w

    network_w = math.fsum(network_terms)
    processing_w = math.fsum(processing_terms)

    per_cell: dict[int, float] = {
        c: math.fsum(w for node, w in per_device.items() if node.cell == c)
        for c in range(topo.cells)
    }

    return PowerReport(
        alpha=alpha,
        beta=beta,
        network_power_w=network_w,
        processing_power_w=processing_w,
        objective_w=alpha * network_w + beta * processing_w,
        per_device_w=per_device,
        per_cell_w=per_cell,
        server_utilization=utilization,
    )
