"""Fair detachments of edge-colored multigraphs.

The package splits amalgamated multigraph vertices apart while sharing
edges, loops and colors out within one of every fair quota, preserving
color-class connectivity where the degree ratios allow it, and uses that
machinery to generate verified Hamiltonian decompositions of lambda-fold
complete graphs and uniform group divisible multigraphs.
"""

from .bee import (
    BipartiteColoring,
    BipartiteMultigraph,
    bee_coloring,
    is_balanced,
    is_equalized,
    is_equitable,
    konig_proper_coloring,
)
from .engine import (
    DetachmentTrace,
    MoveSet,
    RefinedBipartite,
    SplitBipartite,
    StepRecord,
    build_split_bipartite,
    condition3_colors,
    detach_all,
    detach_step,
    refine,
)
from .errors import (
    DocumentError,
    GraphError,
    InfeasibleError,
    PreconditionError,
)
from .evencolor import (
    EulerCircuit,
    euler_circuit,
    evenly_equitable_coloring,
    is_evenly_equitable,
    two_factorization,
)
from .hamilton import (
    Feasibility,
    GddParams,
    HamDecomposition,
    gdd_feasible,
    ham_decompose_gdd,
    ham_decompose_lambda_kn,
    walecki_odd,
)
from .multigraph import (
    AmalgamationSpec,
    ColoredMultigraph,
    DetachmentMap,
    Multigraph,
    approx,
)
from .verify import (
    DetachmentReport,
    assert_step_relations,
    is_gdd,
    verify_detachment,
    verify_ham_decomposition,
    verify_trace,
)

__version__ = "0.1.0"

__all__ = [
    "AmalgamationSpec",
    "BipartiteColoring",
    "BipartiteMultigraph",
    "ColoredMultigraph",
    "DetachmentMap",
    "DetachmentReport",
    "DetachmentTrace",
    "DocumentError",
    "EulerCircuit",
    "Feasibility",
    "GddParams",
    "GraphError",
    "HamDecomposition",
    "InfeasibleError",
    "MoveSet",
    "Multigraph",
    "PreconditionError",
    "RefinedBipartite",
    "SplitBipartite",
    "StepRecord",
    "approx",
    "assert_step_relations",
    "bee_coloring",
    "build_split_bipartite",
    "condition3_colors",
    "detach_all",
    "detach_step",
    "euler_circuit",
    "refine",
    "evenly_equitable_coloring",
    "gdd_feasible",
    "ham_decompose_gdd",
    "ham_decompose_lambda_kn",
    "is_balanced",
    "is_equalized",
    "is_equitable",
    "is_evenly_equitable",
    "is_gdd",
    "konig_proper_coloring",
    "two_factorization",
    "verify_detachment",
    "verify_ham_decomposition",
    "verify_trace",
    "walecki_odd",
]
