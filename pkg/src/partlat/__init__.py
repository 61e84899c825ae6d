"""Metric distances, consensus and fuzzy embeddings on the partition lattice."""

from .partition import (
    AtomIndex,
    CoveringNeighbors,
    EnumerationCapError,
    FUNCTIONALS,
    FunctionalDescriptor,
    GroundSetMismatchError,
    IndicatorVector,
    Partition,
    PartitionFunctionals,
    atom,
    atom_index,
    atom_pairs,
    atoms,
    available_sizes,
    bell_number,
    bottom,
    canonicalize,
    complements,
    covering_neighbors,
    enumerate_partitions,
    functionals,
    indicator,
    induced,
    is_modular,
    iter_partitions,
    join,
    leq,
    meet,
    top,
)
from .metrics import (
    BalancedComplementError,
    ComplementBounds,
    DistanceKind,
    complement_hd_bounds,
    delta_cosize,
    delta_logical,
    delta_rank,
    hd,
    max_distance,
    min_complement_size,
    mmd,
    mmd_oracle,
    relation_matrix_distance,
    vi,
)
from .hasse import (
    Classification,
    HasseGraph,
    WeightedPath,
    ZeroWeightEdgeError,
    build_hasse,
    classify,
    closed_form_delta,
    min_weight_path,
    moebius_inversion,
    predicted_waypoint,
)
from .fuzzy import (
    ConvexCombination,
    FuzzyPartition,
    MembershipMatrix,
    combination_residual,
    decompose,
    embed,
    fuzzy_distance,
    fuzzy_join,
    fuzzy_leq,
    fuzzy_meet,
)
from .consensus import (
    BruteForceResult,
    ConsensusResult,
    FuzzyConsensus,
    Instance,
    UnsupportedMetricError,
    brute_force_consensus,
    consensus,
    dispersion,
    fuzzy_consensus,
    strong_patterns,
)

__version__ = "0.1.0"

__all__ = [
    "AtomIndex",
    "BalancedComplementError",
    "BruteForceResult",
    "Classification",
    "ComplementBounds",
    "ConsensusResult",
    "ConvexCombination",
    "CoveringNeighbors",
    "DistanceKind",
    "EnumerationCapError",
    "FUNCTIONALS",
    "FunctionalDescriptor",
    "FuzzyConsensus",
    "FuzzyPartition",
    "GroundSetMismatchError",
    "HasseGraph",
    "IndicatorVector",
    "Instance",
    "MembershipMatrix",
    "Partition",
    "PartitionFunctionals",
    "UnsupportedMetricError",
    "WeightedPath",
    "ZeroWeightEdgeError",
    "atom",
    "atom_index",
    "atom_pairs",
    "atoms",
    "available_sizes",
    "bell_number",
    "bottom",
    "brute_force_consensus",
    "build_hasse",
    "canonicalize",
    "classify",
    "closed_form_delta",
    "combination_residual",
    "complement_hd_bounds",
    "complements",
    "consensus",
    "covering_neighbors",
    "decompose",
    "delta_cosize",
    "delta_logical",
    "delta_rank",
    "dispersion",
    "embed",
    "enumerate_partitions",
    "functionals",
    "fuzzy_consensus",
    "fuzzy_distance",
    "fuzzy_join",
    "fuzzy_leq",
    "fuzzy_meet",
    "hd",
    "indicator",
    "induced",
    "is_modular",
    "iter_partitions",
    "join",
    "leq",
    "max_distance",
    "meet",
    "min_complement_size",
    "min_weight_path",
    "mmd",
    "mmd_oracle",
    "moebius_inversion",
    "predicted_waypoint",
    "relation_matrix_distance",
    "strong_patterns",
    "top",
    "vi",
]
