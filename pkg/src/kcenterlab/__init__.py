"""k-center approximation lab.

Mixed multiplicative/additive approximation deciders for graph k-center, an
exact pruned-enumeration oracle, bitset coverage kernels, set-cover gadget
generators with predicted certificates, and a CLI tying them together.
"""

from .approx import (
    ABOVE_R,
    ApproxConfig,
    DecisionOutcome,
    approximate_radius,
    decide_2center_53,
    decide_3center_74_weighted,
    decide_kcenter_2k,
    decide_kcenter_2l,
    decide_kcenter_32,
    gonzalez_2approx,
    sample_hitting_set,
)
from .boolcover import UncoveredRow, exists_cover_tuple, intersect_balls, uncovered_mask
from .errors import (
    BudgetExceededError,
    DeciderFailedError,
    EmptyRegionError,
    GraphFormatError,
    InfeasibleError,
    InvalidCoverError,
)
from .exact import CenterSolution, cover_radius, exact_k_radius, verify_cover
from .gadgets import (
    GadgetOutput,
    OVInstance,
    SetCoverInstance,
    build_base_gadget,
    count_gadgets,
    gen_random_graph,
    gen_recursive_lb,
    gen_simple_lb,
    ov_to_setcover,
    power_setcover,
    yes_case_centers,
)
from .graphs import (
    UNREACHABLE,
    DistRow,
    Graph,
    VertexSet,
    all_pairs,
    bfs,
    closest_p_nodes,
    dijkstra,
    farthest_from_set,
    multi_source_dist,
)
from .schedules import (
    DeltaSchedule,
    plan_deltas_combinatorial,
    plan_deltas_omega2,
    plan_deltas_omega_general,
    plan_deltas_tradeoff,
)

__version__ = "0.1.0"
