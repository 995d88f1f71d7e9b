"""Isolating sets of maximal outerplanar graphs (mops).

Exact solvers, constructive K_{1,2}-isolating sets with proven size bounds,
instance generators and a verification harness.
"""

from .constructive import (
    CapExhausted,
    ConstructionTrace,
    ImpossibleInstance,
    PartitionChoice,
    TraceStep,
    find_partition_diagonal,
    isolate_small,
    isolate_theorem1,
    isolate_theorem2,
    theorem1_bound,
    theorem2_bound,
)
from .core import (
    DiagonalPartition,
    FaceApex,
    InvalidMop,
    Mop,
    SimpleGraph,
    add_ear,
    apex_of_edge,
    closed_neighborhood,
    contract_hamiltonian_edge,
    degree,
    degree_two_vertices,
    diagonal_partition,
    faces,
    fan,
    is_valid,
    relabel,
    remove_degree2_vertex,
    residual,
    reverse_orientation,
    rotate,
    validate,
)
from .gen import FAMILY_NAMES, FamilySpec, build_family, catalan, enumerate_mops, random_mop
from .harness import BoundReport, CampaignConfig, Source, read_instances, verify_corpus, write_instances
from .solvers import (
    Coloring,
    IsolatingSet,
    contains_star,
    dominates,
    dominating_by_coloring,
    gamma_exact,
    iota_exact,
    is_isolating_set,
    three_color,
)

__version__ = "0.1.0"
