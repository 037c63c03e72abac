"""Ihara zeta functions of multigraphs, the non-backtracking edge matrix, and
reconstruction of zeta data from edge decks."""

from .edge_operator import build_T, check_J_symmetry, krein_product
from .multigraph import (
    EdgeDeck,
    Multigraph,
    canonical_form,
    edge_deck,
    format_graph,
    kelly_count,
    parse_graph,
    predicates,
)
from .reconstruction import (
    reconstruct,
    reconstruct_Fr_edge,
    reconstruct_Mr_edge,
    reconstruct_N_total,
    reconstruct_Nr_edge,
    reconstruct_pf_pairs,
    reconstruct_Wr_edge,
    reconstruct_zeta,
    reconstruct_zeta_from_Z,
)
from .spectral import numeric_spectrum, pf_eigen
from .walks import walk_counts_brute, walk_counts_direct
from .zeta import bass_polynomial, char_poly, graph_char_poly, verify_bass_identity

__version__ = "0.1.0"
