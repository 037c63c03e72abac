import json
import random

import pytest

from ihara.families import banana, complete, path, random_dense_multigraph, random_multigraph, single_loop
from ihara.multigraph import Multigraph
from ihara.walks import (
    EnumerationBudgetExceeded,
    square_identity_holds,
    verify_decompositions,
    walk_counts_brute,
    walk_counts_direct,
)
from ihara.zeta import graph_char_poly, total_closed_walks

TRIANGLE_PLUS = Multigraph(3, ((0, 1), (1, 2), (2, 0), (0, 0), (1, 2)))


def same(a, b):
    return a.N == b.N and a.M == b.M and a.F == b.F and a.O == b.O and a.W_oriented == b.W_oriented and a.W_edge == b.W_edge


def test_banana3_values():
    t = walk_counts_direct(banana(3), 2)
    assert all(t.N[a][2] == 2 for a in range(6))
    assert all(t.M[a][1] == 2 for a in range(6))
    assert all(t.N[a][0] == 1 and t.M[a][0] == 1 for a in range(6))


def test_banana5_frozen():
    t = walk_counts_direct(banana(5), 4)
    assert t.N_edge(0) == [2, 0, 8, 0, 104]
    assert t.M_edge(0) == [2, 8, 32, 128, 512]
    assert t.W_edge[0] == [2, 16, 88, 424, 1912]
    assert t.O_edge(0) == [2, 8, 24, 96, 312]
    assert t.F_edge(0) == [0, 0, 0, 0, 0]


def test_k4_frozen():
    t = walk_counts_direct(complete(4), 6)
    assert t.N_edge(0) == [2, 0, 0, 4, 4, 0, 16]
    assert t.W_edge[0] == [2, 8, 24, 60, 136, 300, 640]
    assert t.O_edge(0) == [2, 4, 8, 12, 20, 40, 72]


def test_mixed_graph_frozen():
    t = walk_counts_direct(TRIANGLE_PLUS, 5)
    assert [t.N_edge(e) for e in range(5)] == [
        [2, 0, 0, 4, 8, 20],
        [2, 0, 2, 2, 6, 18],
        [2, 0, 0, 4, 8, 20],
        [2, 2, 2, 2, 10, 26],
        [2, 0, 2, 2, 6, 18],
    ]


def test_F_counts_passages():
    t = walk_counts_direct(Multigraph(3, ((0, 1), (1, 2), (2, 0), (0, 1), (1, 1))), 7)
    brute = walk_counts_brute(Multigraph(3, ((0, 1), (1, 2), (2, 0), (0, 1), (1, 1))), 7)
    assert t.F == brute.F


def test_direct_equals_brute():
    rng = random.Random(5)
    graphs = [banana(3), TRIANGLE_PLUS, single_loop(), path(2), complete(4)]
    graphs += [random_multigraph(rng, rng.randint(1, 4), rng.randint(3, 6), loop_prob=0.3) for _ in range(8)]
    for G in graphs:
        assert same(walk_counts_direct(G, 6), walk_counts_brute(G, 6))


def test_trivial_cases():
    t = walk_counts_brute(path(1), 3)
    assert all(x == 0 for row in t.N for x in row[1:])
    assert all(x == 0 for row in t.M for x in row[1:])
    loop = walk_counts_brute(single_loop(), 3)
    assert loop.N[0][3] == 1


def test_orientation_symmetry():
    t = walk_counts_direct(TRIANGLE_PLUS, 8)
    m = TRIANGLE_PLUS.edge_count
    assert all(t.N[e] == t.N[e + m] for e in range(m))


def test_sum_of_N_is_trace():
    G = TRIANGLE_PLUS
    t = walk_counts_direct(G, 10)
    totals = total_closed_walks(graph_char_poly(G), 10)
    for r in range(1, 11):
        assert sum(t.N[a][r] for a in range(2 * G.edge_count)) == totals[r - 1]


def test_F_exceeds_N_somewhere():
    # F counts passages through the reverse orientation with multiplicity,
    # so F <= N is not an invariant; a frozen counterexample
    rng = random.Random(1)
    graphs = [random_dense_multigraph(rng, rng.randint(2, 6), rng.randint(6, 12)) for _ in range(50)]
    G = Multigraph(6, ((3, 5), (4, 2), (0, 3), (4, 3), (3, 4), (3, 2), (1, 0), (4, 1), (5, 5), (1, 3)))
    assert G in graphs
    t = walk_counts_direct(G, 10)
    assert t.F[0][10] == 664 and t.N[0][10] == 648


def test_decompositions():
    assert verify_decompositions(banana(3), 6)
    assert verify_decompositions(banana(5), 5)
    assert verify_decompositions(walk_counts_direct(TRIANGLE_PLUS, 8))
    assert not verify_decompositions(banana(3), 6, offset=1)


def test_square_identity_probe():
    # holds when no walk can contain both orientations of e, fails on B3
    assert square_identity_holds(walk_counts_direct(path(3), 6), 1)
    assert not square_identity_holds(walk_counts_direct(banana(3), 6), 0)


def test_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        walk_counts_brute(banana(6), 8, budget=1000)


def test_json():
    payload = json.loads(walk_counts_direct(banana(3), 2).to_json())
    assert payload["N"][0] == ["2", "0", "4"]
    assert set(payload) == {"R", "edges", "N", "M", "F", "W", "O"}


def test_negative_R():
    with pytest.raises(ValueError):
        walk_counts_direct(banana(3), -1)
