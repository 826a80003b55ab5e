"""divlat: exact intersection theory on divisor lattices of normal surfaces.

Rational intersection lattices with exact Fraction arithmetic, Zariski
decompositions, chain-connectivity certificates, Mumford pull-backs
across resolutions, singularity cycle invariants, dual graphs of curve
configurations, and numerical criteria for adjoint linear systems.
"""

__version__ = "0.1.0"

from .connectivity import (
    DEFAULT_BUDGET,
    ConnectingChain,
    DecompositionWitness,
    chain_connected_component,
    connecting_chain,
    decomposition_count,
    enumerate_decompositions,
    is_chain_connected,
    is_m_connected,
    is_numerically_connected,
    is_z_positive,
)
from .criteria import (
    CohomologyInputs,
    CriterionReport,
    bpf_check,
    delta_prime,
    extension_check,
    frobenius_split,
    fujita_check,
    mu,
    plane_gonality_bound,
    pluri_check,
    q_min,
    reider_obstructions,
    very_ample_check,
)
from .dualgraph import CurveConfiguration, DualGraph, SingularPoint, betti1, build_graph
from .errors import BudgetError, DivlatError
from .lattice import (
    Cluster,
    Divisor,
    IntersectionLattice,
    as_rational,
    format_divisor,
    intersect,
    parse_divisor,
    rational_str,
)
from .resolution import (
    DeltaReport,
    ResolutionModel,
    anticanonical_cycle,
    default_cycle,
    delta_invariant,
    fundamental_cycle,
    mumford_pullback,
    pushforward,
)
from .zariski import ZariskiPair, integral_zariski, is_big_effective, zariski_decompose

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetError",
    "Cluster",
    "CohomologyInputs",
    "ConnectingChain",
    "CriterionReport",
    "CurveConfiguration",
    "DecompositionWitness",
    "DeltaReport",
    "DivlatError",
    "Divisor",
    "DualGraph",
    "IntersectionLattice",
    "ResolutionModel",
    "SingularPoint",
    "ZariskiPair",
    "anticanonical_cycle",
    "as_rational",
    "betti1",
    "bpf_check",
    "build_graph",
    "chain_connected_component",
    "connecting_chain",
    "decomposition_count",
    "default_cycle",
    "delta_invariant",
    "delta_prime",
    "enumerate_decompositions",
    "extension_check",
    "format_divisor",
    "frobenius_split",
    "fujita_check",
    "fundamental_cycle",
    "integral_zariski",
    "intersect",
    "is_big_effective",
    "is_chain_connected",
    "is_m_connected",
    "is_numerically_connected",
    "is_z_positive",
    "mu",
    "mumford_pullback",
    "parse_divisor",
    "plane_gonality_bound",
    "pluri_check",
    "pushforward",
    "q_min",
    "rational_str",
    "reider_obstructions",
    "very_ample_check",
    "zariski_decompose",
]
