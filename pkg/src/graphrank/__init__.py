"""graphrank: symbolic ranks, end spaces and spanning trees for finitely
presented infinite graphs, verified on finite truncations."""

from .cardinality import ALEPH0, ALEPH1, UNCOUNTABLE, Cardinality, finite
from .ordinals import Ordinal, compare, from_int, parse as parse_ordinal, \
    render as render_ordinal, sup
from .addresses import Address, parse_address
from .descriptors import (
    AllOf, BranchPrefix, CentersOf, Descriptor, ExplicitSet, LeavesOf,
    LevelSet, Progression, SpineOf, TopsOf, UnionSet, parse_descriptor,
)
from .expressions import (
    AddEdge, Comb, Complete, Copies, DisjointUnion, FiniteGraph, GraphExpr,
    HangAtTops, JoinVertex, Ray, Star, Tree, WithTops, is_rayless_expr,
    vertices_card,
)
from .parser import ParseError, parse
from .connectivity import is_connected
from .resolve import NeighborDescriptor, adjacency, adjacent, resolves
from .truncation import FiniteTruncation, to_dot, to_json_doc, truncate
from .components import (
    RegionDescriptor, Unsupported, components_after_deletion,
)
from .ends import (
    CombWitness, EndClass, EndSpaceDescriptor, EndSubset, Exhausted,
    RaySchema, StarWitness, all_ends, closure_ends, end_space, is_dispersed,
    is_dominated, reflects_check, star_comb_search, validate_star_comb,
)
from .ideals import Ideal, finite_sets, normally_spanned, sets_below
from .ranks import (
    Certificate, PeelingTree, RankResult, RaylessInputError, ideal_rank,
    ideal_rank_in, kappa_rank, no_rank_certificates, normal_rank,
    rank_transfer_bound, schmidt_rank,
)
from .decompositions import (
    TreeDecomposition, decomposition_to_rank, rank_to_decomposition,
    verify_decomposition, witness_from_json,
)
from .trees import NormalityCertificate, Rule, TreeDescriptor, instantiate
from .spanning import (
    ConstructionError, NSTResult, RaylessResult, RerouteReport,
    check_delta_closure, end_faithful_spanning_tree, is_rayless,
    merge_forest, normal_spanning_tree, normal_tree_for_set,
    rayless_spanning_tree, rayless_tree_containing, reroute_with_ray,
)
from .fixtures import FIXTURES, fixture, fixture_names
from .verify import SweepReport, sweep_grid, verify_decomposition_artifact, \
    verify_tree
from .reports import analyze_report

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
