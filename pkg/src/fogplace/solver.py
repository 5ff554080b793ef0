"""Exact branch-and-bound placement minimizer plus its brute-force oracle
and a greedy baseline.

All three search the same objective: weighted networking plus processing
power under fixed shortest-path routing.  Determinism contract: VMs are
branched in descending CPU order (ties by id), servers in cell-major
order, and among equal-objective optima the branch-and-bound returns the
first one its deterministic depth-first sweep reaches, which for the
default candidate order is the lexicographically smallest assignment
vector.  Objectives are computed with order-invariant correctly-rounded
sums, so the oracle and the exact solver agree bit-for-bit.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ContractError, InvalidConfigError, OracleScopeError
from .placement import (
    Commodity,
    FlowAssignment,
    Placement,
    commodities_of,
    route_flows,
)
from .power import (
    DeviceSpecs,
    OnuProfile,
    PowerReport,
    evaluate,
    olt_power,
    onu_power,
    server_power,
)
from .topology import NodeId, NodeKind, Topology
from .workload import Workload


class SolveStatus(Enum):
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"      # heuristic result without an optimality proof
    INFEASIBLE = "infeasible"
    ABORTED = "aborted"


@dataclass
class Solution:
    status: SolveStatus
    placement: Placement | None
    flows: FlowAssignment | None
    report: PowerReport | None
    nodes_explored: int
    elapsed_s: float

    @property
    def objective_w(self) -> float | None:
        return None if self.report is None else self.report.objective_w


# Candidate-order policies for equal-objective optima.  "pack" keeps the
# canonical server order per VM (lexicographically smallest optimum);
# "spread" rotates the candidate order by one server per VM so a flat
# objective yields a round-robin, load-balancing placement.
TIE_BREAK_PACK = "pack"
TIE_BREAK_SPREAD = "spread"


class _Instance:
    """Precomputed canonical orders, capacities and constant power terms."""

    def __init__(self, w: Workload, t: Topology, specs: DeviceSpecs,
                 alpha: float, beta: float):
        if alpha < 0 or beta < 0:
            raise InvalidConfigError("objective weights must be nonnegative")
        if len(specs.cell_servers) < t.cells:
            raise InvalidConfigError(
                f"{t.cells} cells but server specs for {len(specs.cell_servers)}")
        self.workload = w
        self.topo = t
        self.specs = specs
        self.alpha = alpha
        self.beta = beta

        self.servers: tuple[NodeId, ...] = t.servers()
        self.n_srv = len(self.servers)
        self.spec = [specs.server_spec(s) for s in self.servers]
        self.cap_cpu = [sp.cpu_ghz for sp in self.spec]
        self.cap_ram = [sp.ram_mb for sp in self.spec]
        self.slope = [(sp.max_w - sp.idle_w) / sp.cpu_ghz for sp in self.spec]
        self.activation_w = [sp.idle_w + specs.server_onu.max_w for sp in self.spec]
        # identical-spec groups underpin symmetry breaking among empty servers
        group_of_spec: dict = {}
        self.group = []
        for sp in self.spec:
            self.group.append(group_of_spec.setdefault(sp, len(group_of_spec)))

        self.vm_order = sorted(w.vms, key=lambda vm: (-vm.cpu_ghz, vm.id))
        self.n_vms = len(self.vm_order)
        self.cpu = [vm.cpu_ghz for vm in self.vm_order]
        self.ram = [vm.ram_mb for vm in self.vm_order]
        self.suffix_cpu = [0.0] * (self.n_vms + 1)
        for i in range(self.n_vms - 1, -1, -1):
            self.suffix_cpu[i] = self.suffix_cpu[i + 1] + self.cpu[i]

        self.commodities: tuple[Commodity, ...] = commodities_of(w)
        olt = t.olt()
        self._crosses_olt = {pair: olt in seq for pair, seq in t.path_table.items()}
        self.olt_crossable = any(
            self._crosses_olt.get((a, b), False)
            for a in list(t.access_onus()) + list(self.servers)
            for b in self.servers
            if a != b
        )
        self.server_onu_on_off = specs.server_onu.profile is OnuProfile.ON_OFF

        # access-ONU draw depends only on each ONU's own originating ingress
        ingress_terms: dict[NodeId, list[float]] = {o: [] for o in t.access_onus()}
        for vm in w.vms:
            if vm.ingress_gbps > 0 and vm.origin in ingress_terms:
                ingress_terms[vm.origin].append(vm.ingress_gbps)
        self.access_terms = [
            onu_power(specs.access_onu, math.fsum(ingress_terms[o]), True)
            for o in t.access_onus()
        ]
        self.olt_idle_w = olt_power(specs.olt, 0.0)
        self.network_floor_w = math.fsum(self.access_terms + [self.olt_idle_w])

        self.slope_order = sorted(range(self.n_srv),
                                  key=lambda i: (self.slope[i], i))
        # price ladder for the fallback fractional bound: residual capacity
        # of a loaded server costs its raw slope; an empty server's capacity
        # carries its activation charge pro rata (a valid underestimate)
        self.empty_price = [
            self.slope[i] + self.activation_w[i] / self.cap_cpu[i]
            for i in range(self.n_srv)
        ]
        ladder = [(self.slope[i], i, False) for i in range(self.n_srv)]
        ladder += [(self.empty_price[i], i, True) for i in range(self.n_srv)]
        self.price_ladder = sorted(ladder)

        # per-group data for the discrete-activation bound (groups = servers
        # sharing one spec); exact activation counting per group makes the
        # bound tight enough to prove 20-VM instances quickly
        self.n_groups = len(set(self.group))
        self.g_members: list[list[int]] = [[] for _ in range(self.n_groups)]
        for i, g in enumerate(self.group):
            self.g_members[g].append(i)
        self.g_cap = [self.cap_cpu[m[0]] for m in self.g_members]
        self.g_slope = [self.slope[m[0]] for m in self.g_members]
        self.g_act = [self.activation_w[m[0]] for m in self.g_members]
        self.g_slope_order = sorted(range(self.n_groups),
                                    key=lambda g: (self.g_slope[g], g))

        # Exact rational mirror of the objective.  Placements that tie
        # mathematically (permutations or load redistributions among
        # identical servers) compare equal here, which keeps the oracle and
        # the branch-and-bound in exact agreement.
        self._fr_alpha = Fraction(alpha)
        self._fr_beta = Fraction(beta)
        self._fr_cpu = {vm.id: Fraction(vm.cpu_ghz) for vm in w.vms}
        self._fr_idle = [Fraction(sp.idle_w) for sp in self.spec]
        self._fr_slope = [
            (Fraction(sp.max_w) - Fraction(sp.idle_w)) / Fraction(sp.cpu_ghz)
            for sp in self.spec
        ]
        onu = specs.server_onu
        self._fr_onu_max = Fraction(onu.max_w)
        self._fr_onu_idle = Fraction(onu.idle_w)
        self._fr_onu_span = Fraction(onu.max_w) - Fraction(onu.idle_w)
        self._fr_onu_rate = Fraction(onu.rate_gbps)
        acc = specs.access_onu
        fr_access = []
        for o in t.access_onus():
            thr = sum((Fraction(x) for x in ingress_terms[o]), Fraction(0))
            if acc.profile is OnuProfile.PROPORTIONAL:
                fr_access.append(Fraction(acc.idle_w)
                                 + (Fraction(acc.max_w) - Fraction(acc.idle_w))
                                 * thr / Fraction(acc.rate_gbps))
            else:
                fr_access.append(Fraction(acc.max_w))
        self._fr_access_sum = sum(fr_access, Fraction(0))
        self._fr_olt_idle = Fraction(specs.olt.idle_w)
        self._fr_olt_span = Fraction(specs.olt.max_w) - Fraction(specs.olt.idle_w)
        self._fr_olt_rate = Fraction(specs.olt.rate_gbps)
        self._fr_demand = {c.name: Fraction(c.demand_gbps) for c in self.commodities}

    def vm_server_nodes(self, assign_by_id: dict[int, int]) -> dict[int, NodeId]:
        return {vm_id: self.servers[s] for vm_id, s in assign_by_id.items()}

    def network_power(self, assign_by_id: dict[int, int]) -> float:
        """Networking draw of a complete assignment (server index per VM id)."""
        if not self.olt_crossable:
            return self.network_floor_w
        crossing: list[float] = []
        for com in self.commodities:
            dst = self.servers[assign_by_id[com.dst_vm]]
            src = (self.servers[assign_by_id[com.src_vm]]
                   if com.src_vm is not None else com.fixed_src)
            if src != dst and self._crosses_olt[(src, dst)]:
                crossing.append(com.demand_gbps)
        olt_w = olt_power(self.specs.olt, math.fsum(crossing))
        return math.fsum(self.access_terms + [olt_w])

    def processing_power(self, assign_by_id: dict[int, int]) -> float:
        """Processing draw of a complete assignment, order-invariant."""
        cpu_terms: list[list[float]] = [[] for _ in range(self.n_srv)]
        for vm in self.workload.vms:
            cpu_terms[assign_by_id[vm.id]].append(vm.cpu_ghz)
        through: list[list[float]] | None = None
        if not self.server_onu_on_off:
            through = [[] for _ in range(self.n_srv)]
            for com in self.commodities:
                d = assign_by_id[com.dst_vm]
                s = assign_by_id[com.src_vm] if com.src_vm is not None else None
                if s == d:
                    continue
                through[d].append(com.demand_gbps)
                if s is not None:
                    through[s].append(com.demand_gbps)
        terms = []
        onu_spec = self.specs.server_onu
        for i in range(self.n_srv):
            load = math.fsum(cpu_terms[i])
            thr = math.fsum(through[i]) if through is not None else 0.0
            active = load > 0 or thr > 0
            if not active:
                continue
            w = server_power(self.spec[i], load, load > 0)
            w += onu_power(onu_spec, min(thr, onu_spec.rate_gbps), active)
            terms.append(w)
        return math.fsum(terms)

    def objective(self, assign_by_id: dict[int, int]) -> float:
        return (self.alpha * self.network_power(assign_by_id)
                + self.beta * self.processing_power(assign_by_id))

    def objective_exact(self, assign_by_id: dict[int, int]) -> Fraction:
        """Exact rational objective; ties that are mathematical are exact here."""
        loads = [Fraction(0)] * self.n_srv
        for vm_id, s in assign_by_id.items():
            loads[s] += self._fr_cpu[vm_id]
        through: list[Fraction] | None = None
        if not self.server_onu_on_off:
            through = [Fraction(0)] * self.n_srv
            for com in self.commodities:
                d = assign_by_id[com.dst_vm]
                s = assign_by_id[com.src_vm] if com.src_vm is not None else None
                if s == d:
                    continue
                through[d] += self._fr_demand[com.name]
                if s is not None:
                    through[s] += self._fr_demand[com.name]
        p = Fraction(0)
        for i in range(self.n_srv):
            thr = through[i] if through is not None else Fraction(0)
            if loads[i] == 0 and thr == 0:
                continue
            term = Fraction(0)
            if loads[i] > 0:
                term += self._fr_idle[i] + self._fr_slope[i] * loads[i]
            if self.server_onu_on_off:
                term += self._fr_onu_max
            else:
                clamped = min(thr, self._fr_onu_rate)
                term += self._fr_onu_idle + self._fr_onu_span * clamped / self._fr_onu_rate
            p += term
        olt_thr = Fraction(0)
        if self.olt_crossable:
            for com in self.commodities:
                dst = self.servers[assign_by_id[com.dst_vm]]
                src = (self.servers[assign_by_id[com.src_vm]]
                       if com.src_vm is not None else com.fixed_src)
                if src != dst and self._crosses_olt[(src, dst)]:
                    olt_thr += self._fr_demand[com.name]
        n = (self._fr_access_sum + self._fr_olt_idle
             + self._fr_olt_span * olt_thr / self._fr_olt_rate)
        return self._fr_alpha * n + self._fr_beta * p

    def capacity_ok(self, assign_by_id: dict[int, int]) -> bool:
        load: dict = {}
        for com in self.commodities:
            dst = self.servers[assign_by_id[com.dst_vm]]
            src = (self.servers[assign_by_id[com.src_vm]]
                   if com.src_vm is not None else com.fixed_src)
            if src == dst:
                continue
            seq = self.topo.path_nodes(src, dst)
            for a, b in zip(seq, seq[1:]):
                lk = self.topo.link_between(a, b)
                load[lk] = load.get(lk, 0.0) + com.demand_gbps
        return all(ld <= lk.capacity_gbps for lk, ld in load.items())

    def finish(self, assign_by_id: dict[int, int] | None, status: SolveStatus,
               nodes: int, elapsed: float) -> Solution:
        if assign_by_id is None:
            return Solution(status, None, None, None, nodes, elapsed)
        assign = {vm.id: self.servers[assign_by_id[vm.id]] for vm in self.workload.vms}
        placement = Placement(assign=assign)
        flows = route_flows(placement, self.workload, self.topo)
        report = evaluate(placement, flows, self.workload, self.topo, self.specs,
                          self.alpha, self.beta)
        return Solution(status, placement, flows, report, nodes, elapsed)


def _candidate_orders(inst: _Instance, tie_break: str) -> list[list[int]]:
    base = list(range(inst.n_srv))
    if tie_break == TIE_BREAK_PACK:
        return [base] * inst.n_vms
    if tie_break == TIE_BREAK_SPREAD:
        return [[(pos + k) % inst.n_srv for k in range(inst.n_srv)]
                for pos in range(inst.n_vms)]
    raise InvalidConfigError(f"unknown tie break {tie_break!r}")


def _prorata_fill(inst: _Instance, remaining: float, loads: list[float]) -> float:
    """Fractional fill along the price ladder; activation charged pro rata."""
    need = remaining
    frac = 0.0
    for price, i, when_empty in inst.price_ladder:
        if when_empty:
            if loads[i] != 0.0:
                continue
            room = inst.cap_cpu[i]
        else:
            if loads[i] == 0.0:
                continue
            room = inst.cap_cpu[i] - loads[i]
            if room <= 0.0:
                continue
        take = room if room < need else need
        frac += price * take
        need -= take
        if need <= 0.0:
            break
    if need > 1e-12:
        return math.inf  # not even fractional capacity remains
    return frac


def _discrete_fill(inst: _Instance, remaining: float, loads: list[float]) -> float:
    """Cheapest completion cost over per-group counts of newly started servers.

    Per spec group the residual room of loaded servers is free of charge and
    newly started servers pay their full activation; the remaining demand is
    then filled fractionally at group slopes.  Every completion maps to one
    enumerated count vector, so the minimum is a valid lower bound; it
    dominates the pro-rata fill.
    """
    ng = inst.n_groups
    active_room = [0.0] * ng
    empty = [0] * ng
    group = inst.group
    cap_cpu = inst.cap_cpu
    for i in range(inst.n_srv):
        ld = loads[i]
        g = group[i]
        if ld > 0.0:
            active_room[g] += cap_cpu[i] - ld
        else:
            empty[g] += 1
    # pad to four groups so one code path covers every supported size
    g_cap = inst.g_cap + [0.0] * (4 - ng)
    g_slope = inst.g_slope + [0.0] * (4 - ng)
    g_act = inst.g_act + [0.0] * (4 - ng)
    rooms = active_room + [0.0] * (4 - ng)
    order = inst.g_slope_order
    max_new = [min(empty[g], int(math.ceil(remaining / g_cap[g])))
               for g in range(ng)] + [0] * (4 - ng)
    base_room = sum(active_room)
    best = math.inf
    ks = [0, 0, 0, 0]
    # within one dimension a larger count only adds activation cost, so bail
    # out of that loop as soon as activations alone reach the current best
    for k0 in range(max_new[0] + 1):
        act0 = k0 * g_act[0]
        if act0 >= best:
            break
        room0 = base_room + k0 * g_cap[0]
        for k1 in range(max_new[1] + 1):
            act1 = act0 + k1 * g_act[1]
            if act1 >= best:
                break
            room1 = room0 + k1 * g_cap[1]
            for k2 in range(max_new[2] + 1):
                act2 = act1 + k2 * g_act[2]
                if act2 >= best:
                    break
                room2 = room1 + k2 * g_cap[2]
                for k3 in range(max_new[3] + 1):
                    act3 = act2 + k3 * g_act[3]
                    if act3 >= best:
                        break
                    if room2 + k3 * g_cap[3] + 1e-12 < remaining:
                        continue  # more room needed; larger counts may help
                    ks[0], ks[1], ks[2], ks[3] = k0, k1, k2, k3
                    need = remaining
                    cost = act3
                    for gg in order:
                        room = rooms[gg] + ks[gg] * g_cap[gg]
                        if room <= 0.0:
                            continue
                        take = room if room < need else need
                        cost += g_slope[gg] * take
                        need -= take
                        if need <= 0.0:
                            break
                    if cost < best:
                        best = cost
    return best


def _lower_bound(inst: _Instance, depth: int, loads: list[float],
                 partial_terms_w: float, prune_at: float = math.inf) -> float:
    """Valid objective lower bound for all completions of a partial assignment.

    Processing part: partial draw plus the cheapest fractional completion of
    the remaining CPU demand.  The cheap pro-rata fill is tried first; only
    when it fails to reach ``prune_at`` is the tighter (and costlier)
    discrete-activation fill computed.  Network part: the constant floor.
    """
    remaining = inst.suffix_cpu[depth]
    if remaining <= 0:
        return (inst.alpha * inst.network_floor_w
                + inst.beta * partial_terms_w)
    base = inst.alpha * inst.network_floor_w + inst.beta * partial_terms_w
    frac = _prorata_fill(inst, remaining, loads)
    if frac == math.inf:
        return math.inf
    bound = base + inst.beta * frac
    if bound >= prune_at or inst.n_groups > 4:
        return bound
    return base + inst.beta * _discrete_fill(inst, remaining, loads)


def _partial_processing(inst: _Instance, loads: list[float]) -> float:
    terms = 0.0
    for i in range(inst.n_srv):
        if loads[i] > 0:
            terms += (inst.activation_w[i] + inst.slope[i] * loads[i])
    return terms


def solve_bnb(
    w: Workload,
    t: Topology,
    specs: DeviceSpecs,
    alpha: float = 1.0,
    beta: float = 1.0,
    time_budget_s: float | None = 60.0,
    tie_break: str = TIE_BREAK_PACK,
) -> Solution:
    """Exact depth-first branch-and-bound over VM-to-server assignments.

    Returns the globally minimal weighted power under fixed-path routing,
    or Infeasible, or Aborted with the best incumbent when the time budget
    runs out.  ``nodes_explored`` counts descended branch nodes.
    """
    start = time.monotonic()
    inst = _Instance(w, t, specs, alpha, beta)
    if inst.n_vms == 0:
        return inst.finish({}, SolveStatus.OPTIMAL, 0, time.monotonic() - start)

    # Feasible upper bound from the greedy baseline; used only as a pruning
    # threshold (with float slack) so equal-objective tie-breaking stays
    # with the deterministic sweep.
    greedy = solve_greedy(w, t, specs, alpha, beta)
    if greedy.report is not None:
        threshold = greedy.objective_w + 1e-6 * (1.0 + abs(greedy.objective_w))
    else:
        threshold = math.inf

    orders = _candidate_orders(inst, tie_break)
    symmetry = tie_break == TIE_BREAK_PACK
    n, n_srv = inst.n_vms, inst.n_srv
    vm_ids = [vm.id for vm in inst.vm_order]
    loads = [0.0] * n_srv
    rams = [0.0] * n_srv
    assign_pos = [-1] * n
    partial_w = 0.0  # running processing draw of the partial assignment
    best_exact: Fraction | None = None
    best_float = math.inf   # float(best_exact), cached for bound tests
    best_assign: dict[int, int] | None = None
    nodes = 0
    aborted = False
    deadline = None if time_budget_s is None else start + time_budget_s

    # Transposition pruning: two partial assignments at one depth whose
    # per-group (cpu, ram) load multisets coincide have identical completion
    # costs and feasibility, and the one reached first in the sweep covers
    # the lexicographically smaller completions.
    seen_states: set = set()
    memo_cap = 4_000_000
    group_members = inst.g_members

    def state_key(depth: int) -> tuple:
        parts: list = [depth]
        for members in group_members:
            parts.extend(sorted([(loads[i], rams[i]) for i in members]))
        return tuple(parts)

    def descend(depth: int) -> None:
        nonlocal partial_w, best_exact, best_float, best_assign, nodes, aborted
        if aborted:
            return
        nodes += 1
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            aborted = True
            return
        if depth == n:
            # cheap float screen with slack; the exact rational objective decides
            cheap = inst.alpha * inst.network_floor_w + inst.beta * partial_w
            if cheap >= best_float + 1e-6 * (1.0 + abs(best_float)):
                return
            assign_by_id = {vm_ids[i]: assign_pos[i] for i in range(n)}
            obj = inst.objective_exact(assign_by_id)
            if ((best_exact is None or obj < best_exact)
                    and inst.capacity_ok(assign_by_id)):
                best_exact = obj
                best_float = float(obj)
                best_assign = dict(assign_by_id)
            return
        prune_at = threshold if threshold < best_float else best_float
        bound = _lower_bound(inst, depth, loads, partial_w, prune_at=prune_at)
        if bound > threshold or bound >= best_float:
            return
        if depth > 0:
            key = state_key(depth)
            if key in seen_states:
                return
            if len(seen_states) < memo_cap:
                seen_states.add(key)
        cpu_v, ram_v = inst.cpu[depth], inst.ram[depth]
        seen_empty_group: set[int] = set()
        for s in orders[depth]:
            if loads[s] + cpu_v > inst.cap_cpu[s] or rams[s] + ram_v > inst.cap_ram[s]:
                continue
            was_empty = loads[s] == 0.0
            if symmetry and was_empty:
                g = inst.group[s]
                if g in seen_empty_group:
                    continue
                seen_empty_group.add(g)
            old_load, old_ram, old_partial = loads[s], rams[s], partial_w
            loads[s] = old_load + cpu_v
            rams[s] = old_ram + ram_v
            partial_w = old_partial + inst.slope[s] * cpu_v
            if was_empty:
                partial_w += inst.activation_w[s]
            assign_pos[depth] = s
            descend(depth + 1)
            loads[s], rams[s], partial_w = old_load, old_ram, old_partial
            assign_pos[depth] = -1
            if aborted:
                return

    descend(0)
    elapsed = time.monotonic() - start
    if aborted:
        return inst.finish(best_assign, SolveStatus.ABORTED, nodes, elapsed)
    if best_assign is None:
        return inst.finish(None, SolveStatus.INFEASIBLE, nodes, elapsed)
    return inst.finish(best_assign, SolveStatus.OPTIMAL, nodes, elapsed)


def solve_bruteforce(
    w: Workload,
    t: Topology,
    specs: DeviceSpecs,
    alpha: float = 1.0,
    beta: float = 1.0,
    cap: int = 10_000_000,
) -> Solution:
    """Exhaustive ground-truth enumeration of every total assignment.

    ``nodes_explored`` equals the number of complete assignments visited
    (servers ** VMs).  Refuses instances beyond ``cap`` candidates.
    """
    start = time.monotonic()
    inst = _Instance(w, t, specs, alpha, beta)
    if inst.n_vms == 0:
        return inst.finish({}, SolveStatus.OPTIMAL, 1, time.monotonic() - start)
    total = inst.n_srv ** inst.n_vms
    if total > cap:
        raise OracleScopeError(
            f"{inst.n_srv}^{inst.n_vms} = {total} candidates exceed the oracle cap {cap}")

    n, n_srv = inst.n_vms, inst.n_srv
    vm_ids = [vm.id for vm in inst.vm_order]
    loads = [0.0] * n_srv
    rams = [0.0] * n_srv
    assign_pos = [0] * n
    overload = 0  # servers currently beyond CPU or RAM capacity
    best_exact: Fraction | None = None
    best_float = math.inf
    best_assign: dict[int, int] | None = None
    leaves = 0

    def over(s: int) -> bool:
        return loads[s] > inst.cap_cpu[s] or rams[s] > inst.cap_ram[s]

    def enumerate_from(depth: int) -> None:
        nonlocal overload, best_exact, best_float, best_assign, leaves
        if depth == n:
            leaves += 1
            if overload == 0:
                cheap = (inst.alpha * inst.network_floor_w
                         + inst.beta * _partial_processing(inst, loads))
                if cheap >= best_float + 1e-6 * (1.0 + abs(best_float)):
                    return
                assign_by_id = {vm_ids[i]: assign_pos[i] for i in range(n)}
                obj = inst.objective_exact(assign_by_id)
                if ((best_exact is None or obj < best_exact)
                        and inst.capacity_ok(assign_by_id)):
                    best_exact = obj
                    best_float = float(obj)
                    best_assign = dict(assign_by_id)
            return
        cpu_v, ram_v = inst.cpu[depth], inst.ram[depth]
        for s in range(n_srv):
            was_over = over(s)
            old_load, old_ram = loads[s], rams[s]
            loads[s] = old_load + cpu_v
            rams[s] = old_ram + ram_v
            now_over = over(s)
            overload += int(now_over) - int(was_over)
            assign_pos[depth] = s
            enumerate_from(depth + 1)
            overload -= int(now_over) - int(was_over)
            loads[s], rams[s] = old_load, old_ram

    enumerate_from(0)
    elapsed = time.monotonic() - start
    if best_assign is None:
        return inst.finish(None, SolveStatus.INFEASIBLE, leaves, elapsed)
    return inst.finish(best_assign, SolveStatus.OPTIMAL, leaves, elapsed)


def solve_greedy(
    w: Workload,
    t: Topology,
    specs: DeviceSpecs,
    alpha: float = 1.0,
    beta: float = 1.0,
) -> Solution:
    """Marginal-cost greedy baseline; never better than the exact solver.

    Each VM (canonical order) goes to the feasible server with the smallest
    exact objective increase.  If that dead-ends, a first-fit pass over the
    same order is tried before declaring the instance infeasible.
    """
    start = time.monotonic()
    inst = _Instance(w, t, specs, alpha, beta)
    if inst.n_vms == 0:
        return inst.finish({}, SolveStatus.OPTIMAL, 0, time.monotonic() - start)

    def run(first_fit: bool) -> tuple[dict[int, int] | None, int]:
        loads = [0.0] * inst.n_srv
        rams = [0.0] * inst.n_srv
        assign_by_id: dict[int, int] = {}
        tried = 0
        for pos, vm in enumerate(inst.vm_order):
            chosen = None
            chosen_cost = math.inf
            for s in range(inst.n_srv):
                if (loads[s] + vm.cpu_ghz > inst.cap_cpu[s]
                        or rams[s] + vm.ram_mb > inst.cap_ram[s]):
                    continue
                tried += 1
                if first_fit:
                    chosen = s
                    break
                marginal = inst.slope[s] * vm.cpu_ghz
                if loads[s] == 0.0:
                    marginal += inst.activation_w[s]
                cost = inst.beta * marginal
                if cost < chosen_cost:
                    chosen, chosen_cost = s, cost
            if chosen is None:
                return None, tried
            loads[chosen] += vm.cpu_ghz
            rams[chosen] += vm.ram_mb
            assign_by_id[vm.id] = chosen
        return assign_by_id, tried

    nodes = 0
    for first_fit in (False, True):
        assign_by_id, tried = run(first_fit)
        nodes += tried
        if assign_by_id is not None and inst.capacity_ok(assign_by_id):
            return inst.finish(assign_by_id, SolveStatus.FEASIBLE, nodes,
                               time.monotonic() - start)
    return inst.finish(None, SolveStatus.INFEASIBLE, nodes, time.monotonic() - start)
