"""Rainbow K_t-subdivisions in properly edge-coloured graphs.

Dense-subgraph extraction by exact min-cut, (d, lambda, eps)-expander
coverings, layered rainbow search with forbidden vertices and colours, the
greedy subdivision builder and brute-force verifiers for all of it.
"""
from .certificates import RainbowPath, SubdivisionCertificate, shortcut_walk
from .density import (DensityWitness, MinimalCertificate, PreconditionError,
                      dense_subgraph_decision, extract_d_minimal)
from .expander import (Covering, ExpanderParams, ExpanderPiece, cover_by_expanders,
                       extract_expander, find_violating_set)
from .graph import (ColouredGraph, DegreeStats, GraphError, GraphFormatError, SubgraphView,
                    boundary_edges, degree_stats, dump, dumps, load, loads)
from .instances import (GeneratorSpec, gen_hypercube, gen_one_factorized_complete,
                        gen_rainbow_complete, gen_random_proper)
from .ladder import ParamLadder, compute_ladder, practical_ladder
from .oracle import (brute_d_minimal_check, brute_expander_check, brute_rainbow_cycle,
                     verify_subdivision)
from .search import (AvoidSet, ColourSplit, ConnectTranscript, ReachResult, SplitError,
                     check_edge_to_vertex, rainbow_connect, rainbow_reach, split_colours)
from .subdivision import (IncrementTrace, SubdivisionOutcome, build_subdivision,
                          find_rainbow_subdivision, find_small_dense_subgraph)

__all__ = [
    "AvoidSet",
    "ColourSplit",
    "ColouredGraph",
    "ConnectTranscript",
    "Covering",
    "DegreeStats",
    "DensityWitness",
    "ExpanderParams",
    "ExpanderPiece",
    "GeneratorSpec",
    "GraphError",
    "GraphFormatError",
    "IncrementTrace",
    "MinimalCertificate",
    "ParamLadder",
    "PreconditionError",
    "RainbowPath",
    "ReachResult",
    "SplitError",
    "SubdivisionCertificate",
    "SubdivisionOutcome",
    "SubgraphView",
    "boundary_edges",
    "brute_d_minimal_check",
    "brute_expander_check",
    "brute_rainbow_cycle",
    "build_subdivision",
    "check_edge_to_vertex",
    "compute_ladder",
    "cover_by_expanders",
    "degree_stats",
    "dense_subgraph_decision",
    "dump",
    "dumps",
    "extract_d_minimal",
    "extract_expander",
    "find_rainbow_subdivision",
    "find_small_dense_subgraph",
    "find_violating_set",
    "gen_hypercube",
    "gen_one_factorized_complete",
    "gen_rainbow_complete",
    "gen_random_proper",
    "load",
    "loads",
    "practical_ladder",
    "rainbow_connect",
    "rainbow_reach",
    "shortcut_walk",
    "split_colours",
    "verify_subdivision",
]

__version__ = "0.1.0"
