"""Application encoders: each ``build_*`` returns a :class:`~lopsided.engine.Problem`."""

from .common import (Certificate, IndexedChecker, LazyChecker, LookupChecker, all_events,
                     criterion_input, key_adjacency, recheck_certificate, verify_solution)
from .generators import (random_block_graph, random_color_matrix, random_edge_coloring,
                         random_hypergraph, random_ksat, random_packing)
from .permutations import (BlockPartition, ColorMatrix, PackingInstance, build_packing,
                           build_strong_coloring, build_transversal, transversal_delta_cap)
from .rainbow import (EdgeColoring, build_rainbow_hamcycle, build_rainbow_matching_kn,
                      build_rainbow_matching_kns, kns_delta_bound, kns_event_probability)
from .variables import (CnfInstance, Hypergraph, build_hypergraph_coloring, build_ksat,
                        hypercolor_occurrence_bound, ksat_mu, ksat_occurrence_bound)

__all__ = [
    "BlockPartition", "Certificate", "CnfInstance", "ColorMatrix", "EdgeColoring", "Hypergraph",
    "IndexedChecker", "LazyChecker", "LookupChecker", "PackingInstance", "all_events",
    "build_hypergraph_coloring", "build_ksat", "build_packing", "build_rainbow_hamcycle",
    "build_rainbow_matching_kn", "build_rainbow_matching_kns", "build_strong_coloring",
    "build_transversal", "criterion_input", "hypercolor_occurrence_bound", "key_adjacency",
    "kns_delta_bound", "kns_event_probability", "ksat_mu", "ksat_occurrence_bound",
    "random_block_graph", "random_color_matrix", "random_edge_coloring", "random_hypergraph",
    "random_ksat", "random_packing", "recheck_certificate", "transversal_delta_cap",
    "verify_solution",
]
