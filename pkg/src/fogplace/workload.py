"""Seeded generation and validation of VM request sets.

Every request carries a CPU demand, a RAM demand, an origin access ONU and
an optional end-user ingress rate; pairwise VM-to-VM traffic is drawn
sparsely.  Generation is a pure function of (parameters, seed): equal
inputs give byte-identical workloads after serialization.
"""

from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidConfigError
from .power import DeviceSpecs
from .topology import NodeId, NodeKind, Topology, node_from_str


@dataclass(frozen=True)
class VmRequest:
    id: int
    cpu_ghz: float
    ram_mb: float
    origin: NodeId
    ingress_gbps: float = 0.0


@dataclass(frozen=True)
class Workload:
    vms: tuple[VmRequest, ...]
    # ordered (src VM, dst VM) -> Gbps, self-pairs excluded
    traffic: dict[tuple[int, int], float]
    seed: int

    def traffic_items(self) -> list[tuple[int, int, float]]:
        return [(v, w, g) for (v, w), g in sorted(self.traffic.items())]

    def total_cpu_ghz(self) -> float:
        return sum(vm.cpu_ghz for vm in self.vms)


def _check_range(name: str, rng: tuple[float, float]) -> None:
    lo, hi = rng
    if lo > hi:
        raise InvalidConfigError(f"{name} range [{lo}, {hi}] is empty")


def generate_workload(
    n_vms: int,
    cpu_range: tuple[float, float],
    ram_range: tuple[float, float],
    traffic_range: tuple[float, float],
    traffic_density: float,
    topology: Topology,
    seed: int,
    ingress_enabled: bool = False,
    specs: DeviceSpecs | None = None,
) -> Workload:
    """Draw ``n_vms`` requests uniformly from the given ranges.

    Each ordered VM pair carries traffic with probability
    ``traffic_density``, uniform in ``traffic_range``.  Origins rotate
    round-robin over the topology's access ONUs.
    """
    if n_vms < 0:
        raise InvalidConfigError("n_vms must be >= 0")
    _check_range("cpu", cpu_range)
    _check_range("ram", ram_range)
    _check_range("traffic", traffic_range)
    if cpu_range[0] <= 0:
        raise InvalidConfigError("cpu range must be positive")
    if ram_range[0] <= 0:
        raise InvalidConfigError("ram range must be positive")
    if traffic_range[0] < 0:
        raise InvalidConfigError("traffic range must be nonnegative")
    if not 0.0 <= traffic_density <= 1.0:
        raise InvalidConfigError("traffic density must lie in [0, 1]")

    if specs is not None:
        max_cpu = max(s.cpu_ghz for s in specs.cell_servers[: topology.cells])
        if cpu_range[1] > max_cpu:
            warnings.warn(
                f"cpu range max {cpu_range[1]} GHz exceeds every server capacity "
                f"({max_cpu} GHz); generated workloads may be infeasible",
                stacklevel=2,
            )

    rng = random.Random(seed)
    onus = topology.access_onus()
    vms = []
    for i in range(n_vms):
        cpu = rng.uniform(*cpu_range)
        ram = rng.uniform(*ram_range)
        ingress = rng.uniform(*traffic_range) if ingress_enabled else 0.0
        vms.append(VmRequest(id=i, cpu_ghz=cpu, ram_mb=ram,
                             origin=onus[i % len(onus)], ingress_gbps=ingress))

    traffic: dict[tuple[int, int], float] = {}
    for v in range(n_vms):
        for w in range(n_vms):
            if v == w:
                continue
            if rng.random() < traffic_density:
                traffic[(v, w)] = rng.uniform(*traffic_range)

    return Workload(vms=tuple(vms), traffic=traffic, seed=seed)


def validate_workload(
    w: Workload, t: Topology, specs: DeviceSpecs | None = None
) -> list[str]:
    """Collect invariant violations as data; an empty list means well-formed."""
    violations: list[str] = []
    ids = [vm.id for vm in w.vms]
    if ids != list(range(len(ids))):
        violations.append(f"VM ids {ids} are not the gapless range 0..{len(ids) - 1}")
    onus = set(t.access_onus())
    for vm in w.vms:
        if vm.cpu_ghz <= 0:
            violations.append(f"VM {vm.id}: CPU demand {vm.cpu_ghz} GHz is not positive")
        if vm.ram_mb <= 0:
            violations.append(f"VM {vm.id}: RAM demand {vm.ram_mb} MB is not positive")
        if vm.ingress_gbps < 0:
            violations.append(f"VM {vm.id}: negative ingress {vm.ingress_gbps} Gbps")
        if vm.origin not in onus:
            violations.append(f"VM {vm.id}: origin {vm.origin} is not an access ONU of the topology")
    if specs is not None:
        max_cpu = max(s.cpu_ghz for s in specs.cell_servers[: t.cells])
        for vm in w.vms:
            if vm.cpu_ghz > max_cpu:
                violations.append(
                    f"VM {vm.id}: CPU demand {vm.cpu_ghz} GHz exceeds the largest "
                    f"server capacity {max_cpu} GHz")
        per_onu: dict[NodeId, float] = {}
        for vm in w.vms:
            per_onu[vm.origin] = per_onu.get(vm.origin, 0.0) + vm.ingress_gbps
        for onu, total in sorted(per_onu.items(), key=lambda kv: kv[0].sort_key()):
            if total > specs.access_onu.rate_gbps:
                violations.append(
                    f"access ONU {onu}: aggregate ingress {total} Gbps exceeds its "
                    f"rate {specs.access_onu.rate_gbps} Gbps")
    known = {vm.id for vm in w.vms}
    for (v, u), gbps in sorted(w.traffic.items()):
        if v == u:
            violations.append(f"traffic entry ({v}, {u}) is self-traffic")
        if gbps < 0:
            violations.append(f"traffic entry ({v}, {u}): negative demand {gbps} Gbps")
        if v not in known or u not in known:
            violations.append(f"traffic entry ({v}, {u}) references an unknown VM")
    return violations


def workload_to_dict(w: Workload) -> dict:
    return {
        "seed": w.seed,
        "vms": [
            {
                "id": vm.id,
                "cpu_ghz": vm.cpu_ghz,
                "ram_mb": vm.ram_mb,
                "origin": str(vm.origin),
                "ingress_gbps": vm.ingress_gbps,
            }
            for vm in w.vms
        ],
        "traffic": [[v, u, g] for v, u, g in w.traffic_items()],
    }


def workload_from_dict(d: dict) -> Workload:
    vms = tuple(
        VmRequest(
            id=int(e["id"]),
            cpu_ghz=float(e["cpu_ghz"]),
            ram_mb=float(e["ram_mb"]),
            origin=node_from_str(e["origin"]),
            ingress_gbps=float(e.get("ingress_gbps", 0.0)),
        )
        for e in d["vms"]
    )
    traffic = {(int(v), int(u)): float(g) for v, u, g in d.get("traffic", [])}
    return Workload(vms=vms, traffic=traffic, seed=int(d.get("seed", 0)))


def save_workload(w: Workload, path: str | Path) -> None:
    Path(path).write_text(json.dumps(workload_to_dict(w), indent=2, sort_keys=True) + "\n")


def load_workload(path: str | Path) -> Workload:
    return workload_from_dict(json.loads(Path(path).read_text()))
