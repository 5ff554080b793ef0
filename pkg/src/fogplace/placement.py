"""Placements, commodity routing on fixed shortest paths, and feasibility checks.

A placement maps every VM to one server attachment point.  Traffic between
two VMs (and optional end-user ingress toward a VM) becomes a commodity
routed on the topology's canonical minimum-hop path; co-located endpoints
load no link.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import ContractError
from .power import DeviceSpecs
from .topology import Link, NodeId, NodeKind, Topology
from .workload import Workload


@dataclass(frozen=True)
class Placement:
    """Total VM-to-server assignment; VMs are unsplittable."""

    assign: dict[int, NodeId]

    def server_of(self, vm_id: int) -> NodeId:
        return self.assign[vm_id]


@dataclass(frozen=True)
class Commodity:
    """One routed demand: VM-to-VM traffic or fixed-origin ingress."""

    name: str
    demand_gbps: float
    dst_vm: int
    src_vm: int | None = None          # None for ingress commodities
    fixed_src: NodeId | None = None    # origin access ONU for ingress


def commodities_of(w: Workload) -> tuple[Commodity, ...]:
    """Deterministic commodity list: ingress per VM first, then VM pairs."""
    items: list[Commodity] = []
    for vm in w.vms:
        if vm.ingress_gbps > 0:
            items.append(Commodity(name=f"g_v{vm.id}", demand_gbps=vm.ingress_gbps,
                                   dst_vm=vm.id, fixed_src=vm.origin))
    for (v, u), gbps in sorted(w.traffic.items()):
        if gbps > 0:
            items.append(Commodity(name=f"t_v{v}_v{u}", demand_gbps=gbps,
                                   dst_vm=u, src_vm=v))
    return tuple(items)


@dataclass(frozen=True)
class RoutedCommodity:
    commodity: Commodity
    src_node: NodeId
    dst_node: NodeId
    # node sequence src..dst; empty when both endpoints share a server
    path: tuple[NodeId, ...]

    @property
    def demand_gbps(self) -> float:
        return self.commodity.demand_gbps


@dataclass
class FlowAssignment:
    routed: tuple[RoutedCommodity, ...]
    link_load_gbps: dict[Link, float]
    capacity_violations: list[str] = field(default_factory=list)

    def ok(self) -> bool:
        return not self.capacity_violations


def route_flows(p: Placement, w: Workload, t: Topology) -> FlowAssignment:
    """Route every positive-demand commodity on its canonical shortest path.

    Link loads aggregate both directions; any aggregate above a link's
    capacity is recorded as a violation (the placement is then infeasible).
    """
    assign = p.assign
    routed: list[RoutedCommodity] = []
    load: dict[Link, float] = {}
    for com in commodities_of(w):
        if com.src_vm is not None:
            if com.src_vm not in assign or com.dst_vm not in assign:
                raise ContractError(
                    f"commodity {com.name}: placement misses one of its VMs")
            src = assign[com.src_vm]
        else:
            if com.dst_vm not in assign:
                raise ContractError(
                    f"commodity {com.name}: placement misses VM {com.dst_vm}")
            src = com.fixed_src
        dst = assign[com.dst_vm]
        if src == dst:
            routed.append(RoutedCommodity(com, src, dst, ()))
            continue
        seq = t.path_nodes(src, dst)
        routed.append(RoutedCommodity(com, src, dst, seq))
        for a, b in zip(seq, seq[1:]):
            lk = t.link_between(a, b)
            load[lk] = load.get(lk, 0.0) + com.demand_gbps

    violations = [
        f"link {lk}: load {ld} Gbps exceeds capacity {lk.capacity_gbps} Gbps"
        for lk, ld in sorted(load.items(), key=lambda kv: kv[0].key())
        if ld > lk.capacity_gbps
    ]
    return FlowAssignment(routed=tuple(routed), link_load_gbps=load,
                          capacity_violations=violations)


def check_feasibility(
    p: Placement, w: Workload, t: Topology, specs: DeviceSpecs
) -> list[str]:
    """All constraint violations of a placement, as data (empty means feasible)."""
    violations: list[str] = []
    servers = set(t.servers())
    assign: Mapping[int, NodeId] = p.assign

    vm_ids = {vm.id for vm in w.vms}
    missing = sorted(vm_ids - set(assign))
    for vm_id in missing:
        violations.append(f"VM {vm_id} has no assignment")
    extra = sorted(set(assign) - vm_ids)
    for vm_id in extra:
        violations.append(f"assignment references unknown VM {vm_id}")
    for vm_id, node in sorted(assign.items()):
        if node not in servers:
            violations.append(f"VM {vm_id} assigned to non-server node {node}")

    vm_by_id = {vm.id: vm for vm in w.vms}
    cpu_load: dict[NodeId, float] = {}
    ram_load: dict[NodeId, float] = {}
    for vm_id, node in assign.items():
        if vm_id in vm_by_id and node in servers:
            cpu_load[node] = cpu_load.get(node, 0.0) + vm_by_id[vm_id].cpu_ghz
            ram_load[node] = ram_load.get(node, 0.0) + vm_by_id[vm_id].ram_mb
    for node in sorted(cpu_load):
        spec = specs.server_spec(node)
        if cpu_load[node] > spec.cpu_ghz:
            violations.append(
                f"server {node}: CPU load {cpu_load[node]} GHz exceeds capacity "
                f"{spec.cpu_ghz} GHz by {cpu_load[node] - spec.cpu_ghz} GHz")
        if ram_load[node] > spec.ram_mb:
            violations.append(
                f"server {node}: RAM load {ram_load[node]} MB exceeds capacity "
                f"{spec.ram_mb} MB by {ram_load[node] - spec.ram_mb} MB")

    if not missing and not extra:
        try:
            flows = route_flows(p, w, t)
            violations.extend(flows.capacity_violations)
        except ContractError as exc:
            violations.append(str(exc))
    return violations
