"""Randomised invariants over small connected multigraphs with loops."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ihara import polynomials as P
from ihara.edge_operator import build_T, check_J_symmetry
from ihara.multigraph import Multigraph, canonical_form, count_subgraphs, edge_deck, is_connected, kelly_count
from ihara.walks import walk_counts_brute, walk_counts_direct
from ihara.zeta import char_poly, graph_char_poly, total_closed_walks, verify_bass_identity, zeta_inverse_series


@st.composite
def multigraphs(draw, max_vertices=5, max_edges=7, connected=True):
    n = draw(st.integers(1, max_vertices))
    tree = []
    if connected:
        for v in range(1, n):
            tree.append((draw(st.integers(0, v - 1)), v))
    extra = draw(st.integers(0 if tree else 1, max(max_edges - len(tree), 1)))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    edges = tree + [draw(pairs) for _ in range(extra)]
    edges = draw(st.permutations(edges))
    return Multigraph(n, tuple(edges))


@settings(max_examples=60, deadline=None)
@given(multigraphs(), st.data())
def test_canonical_form_ignores_labels(G, data):
    perm = data.draw(st.permutations(range(G.vertex_count)))
    H = G.relabel(perm)
    assert canonical_form(G) == canonical_form(H)
    assert graph_char_poly(G) == graph_char_poly(H)


@settings(max_examples=60, deadline=None)
@given(multigraphs())
def test_bass_identity(G):
    assert verify_bass_identity(G)


@settings(max_examples=60, deadline=None)
@given(multigraphs(connected=False))
def test_J_symmetry(G):
    assert check_J_symmetry(build_T(G))


@settings(max_examples=40, deadline=None)
@given(multigraphs())
def test_traces_are_power_sums(G):
    T = build_T(G)
    char = char_poly(T)
    R = 2 * G.edge_count
    acc = np.identity(T.shape[0], dtype=object)
    traces = []
    for _ in range(R):
        acc = acc.dot(T)
        traces.append(int(np.trace(acc)))
    assert total_closed_walks(char, R) == traces


@settings(max_examples=40, deadline=None)
@given(multigraphs())
def test_log_derivative_of_zeta(G):
    char = graph_char_poly(G)
    R = 2 * G.edge_count
    z = zeta_inverse_series(char, R + 1)
    series = -(z.log().derivative())
    assert [series[r - 1] for r in range(1, R + 1)] == total_closed_walks(char, R)
    # zeta^{-1} is a polynomial of degree at most 2|E|
    assert P.degree(P.trim(z.coeffs)) <= R


@settings(max_examples=30, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=6))
def test_direct_walk_counts_match_enumeration(G):
    a, b = walk_counts_direct(G, 5), walk_counts_brute(G, 5)
    assert (a.N, a.M, a.F, a.W_edge) == (b.N, b.M, b.F, b.W_edge)


@settings(max_examples=30, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=6), multigraphs(max_vertices=3, max_edges=3, connected=False))
def test_kelly_lemma(G, H):
    if H.edge_count >= G.edge_count:
        return
    assert kelly_count(H, edge_deck(G)) == count_subgraphs(H, G)


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_edges=8))
def test_walk_orientation_symmetry(G):
    t = walk_counts_direct(G, 6)
    m = G.edge_count
    for e in range(m):
        # reversing a closed walk swaps the two orientations
        assert t.N[e] == t.N[e + m]
    assert is_connected(G)
