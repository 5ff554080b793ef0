"""Energy-minimizing VM placement for PON-interconnected fog cells."""

from .errors import (
    ContractError,
    FogplaceError,
    InvalidConfigError,
    NodeNotFoundError,
    OracleScopeError,
    PowerDomainError,
)
from .placement import (
    Commodity,
    FlowAssignment,
    Placement,
    RoutedCommodity,
    check_feasibility,
    commodities_of,
    route_flows,
)
from .power import (
    DeviceSpecs,
    OltSpec,
    OnuProfile,
    OnuSpec,
    PowerReport,
    ServerSpec,
    default_specs,
    evaluate,
    olt_power,
    onu_power,
    server_power,
)
from .solver import (
    Solution,
    SolveStatus,
    TIE_BREAK_PACK,
    TIE_BREAK_SPREAD,
    solve_bnb,
    solve_bruteforce,
    solve_greedy,
)
from .topology import (
    Link,
    NodeId,
    NodeKind,
    Topology,
    build_topology,
    node_from_str,
    shortest_path,
)
from .workload import (
    VmRequest,
    Workload,
    generate_workload,
    load_workload,
    save_workload,
    validate_workload,
    workload_from_dict,
    workload_to_dict,
)

__version__ = "0.1.0"
