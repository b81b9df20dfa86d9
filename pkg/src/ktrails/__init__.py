"""k-trails: recognition, preimage witnesses, containment, and weighted approximation.

A k-trail is a connected multigraph arising as the homomorphic image of a
connected graph of maximum degree at most k. This package decides the
property exactly (via matroid intersection on a derived slot graph), builds
explicit tree witnesses, grows contained k-trails into (k+1)-trail
witnesses, and finds a (2k-1)-trail contained in a weighted graph costing
no more than any contained k-trail (exact-rational iterative LP
relaxation). Exponential-time oracles back every claim at test scale.
"""

__version__ = "0.1.0"

from .auxgraph import (
    AuxGraph,
    AuxTree,
    build_aux,
    spanning_tree,
    tree_to_subgraph_witness,
    tree_to_witness,
    witness_to_tree,
)
from .containment import (
    absorb_cycle,
    extend_to_full_trail,
    oracle_contains_k_trail,
    shortest_leftover_cycle,
)
from .errors import ParseError, SizeGuardError, UsageError
from .instances import (
    gen_gap_instance,
    gen_hardness_gadget,
    gen_random_multigraph,
    gen_random_weights,
)
from .lp import (
    LinearRow,
    LpBasicSolution,
    LpInfeasible,
    LpProblem,
    LpUnbounded,
    separate_forest,
    simplex_solve,
    solve_with_cuts,
)
from .matroids import (
    GraphicMatroid,
    IntersectionResult,
    PartitionMatroid,
    matroid_intersection,
    max_weight_basis_alpha,
    max_weight_split,
)
from .multigraph import (
    MultiGraph,
    WeightedMultiGraph,
    parse_graph,
    render_graph,
    to_dot,
)
from .oracles import (
    has_hamiltonian_path,
    oracle_feasible_split,
    oracle_min_k,
    spanning_trees,
    trees_containing_matching,
)
from .preimage import (
    PreimageWitness,
    balance_degrees,
    identity_witness,
    merge_to_multiplicity,
    split_into_tree,
    verify_witness,
    witness_from_json,
    witness_to_json,
    witness_violations,
)
from .recognition import (
    RecognitionResult,
    SplitFeasibility,
    eulerian_witness,
    feasible_split,
    is_k_trail,
    min_trail_k,
)
from .weighted import (
    ApproxResult,
    NoKTrailCertificate,
    approx_min_weight_trail,
    oracle_min_weight_k_trail,
)
