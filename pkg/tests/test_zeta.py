import random

import pytest

from ihara import polynomials as P
from ihara.families import banana, complete, cube, octahedron, path, random_multigraph, single_loop
from ihara.multigraph import Multigraph
from ihara.zeta import (
    GirthReport,
    bass_polynomial,
    char_poly,
    girth_and_polygons,
    graph_char_poly,
    total_closed_walks,
    verify_bass_identity,
    zeta_inverse_poly,
    zeta_inverse_series,
)


def test_banana3():
    assert graph_char_poly(banana(3)) == [-4, 0, 9, 0, -6, 0, 1]
    assert bass_polynomial(banana(3)) == [4, 0, -5, 0, 1]


def test_banana5():
    # (lambda^2 - 16)(lambda^2 - 1)^4
    expected = P.poly_mul([-16, 0, 1], P.binomial_poly(4, -1))
    assert graph_char_poly(banana(5)) == expected == [-16, 0, 65, 0, -100, 0, 70, 0, -20, 0, 1]


def test_k4():
    assert graph_char_poly(complete(4)) == [16, 0, -24, -16, -3, 24, 16, 0, -6, -8, 0, 0, 1]
    assert bass_polynomial(complete(4)) == [16, 0, 8, -16, -3, -8, 2, 0, 1]


def test_trivial_graphs():
    assert graph_char_poly(path(1)) == [0, 0, 1]
    assert graph_char_poly(single_loop()) == [1, -2, 1]
    assert graph_char_poly(Multigraph(1, ())) == [1]
    assert char_poly([[2]]) == [-2, 1]


def test_bass_identity_fixtures():
    for G in (banana(3), single_loop(), path(1), path(3), complete(6), cube(), octahedron()):
        assert verify_bass_identity(G)


def test_bass_identity_loops_and_parallels():
    rng = random.Random(11)
    for _ in range(25):
        G = random_multigraph(rng, rng.randint(1, 5), rng.randint(4, 8), loop_prob=0.4)
        assert verify_bass_identity(G)


def test_bass_identity_detects_wrong_adjacency():
    G = Multigraph(2, ((0, 0), (0, 1), (0, 1)))
    wrong = [[1, 2], [2, 0]]  # loop counted once
    assert not verify_bass_identity(G, adjacency=wrong)


def test_bass_needs_connected():
    with pytest.raises(ValueError):
        verify_bass_identity(Multigraph(4, ((0, 1), (2, 3))))


def test_zeta_series():
    s = zeta_inverse_series(graph_char_poly(banana(3)), 8)
    assert s.as_ints() == [1, 0, -6, 0, 9, 0, -4, 0, 0]
    assert zeta_inverse_poly([0, 0, 1]) == [1]


def test_closed_walk_totals():
    assert total_closed_walks(graph_char_poly(banana(3)), 3) == [0, 12, 0]
    assert total_closed_walks(graph_char_poly(banana(5)), 6) == [0, 40, 0, 520, 0, 8200]
    assert total_closed_walks(graph_char_poly(complete(6)), 8) == [0, 0, 120, 360, 720, 4080, 17640, 64440]
    with pytest.raises(ValueError):
        total_closed_walks([1], 0)


def test_log_zeta_counts_closed_walks():
    # u d/du log zeta(u) = sum N_r u^r
    char = graph_char_poly(complete(4))
    z = zeta_inverse_series(char, 11)
    series = -(z.log().derivative())
    assert [int(series[r - 1]) for r in range(1, 11)] == total_closed_walks(char, 10)


def test_girth():
    assert girth_and_polygons(graph_char_poly(banana(3)), 3) == GirthReport(2, 3)
    assert girth_and_polygons(graph_char_poly(single_loop()), 1) == GirthReport(1, 1)
    assert girth_and_polygons(graph_char_poly(complete(4)), 6) == GirthReport(3, 4)
    assert girth_and_polygons(graph_char_poly(complete(6)), 15) == GirthReport(3, 20)
    assert girth_and_polygons(graph_char_poly(cube()), 12) == GirthReport(4, 6)
    assert girth_and_polygons(graph_char_poly(octahedron()), 12) == GirthReport(3, 8)
    assert girth_and_polygons(graph_char_poly(path(3)), 3) is None
