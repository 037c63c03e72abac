import numpy as np
import pytest

from ihara.edge_operator import build_T
from ihara.families import banana, complete, complete_bipartite, cube, cycle, octahedron, path
from ihara.multigraph import Multigraph, betti_number, predicates
from ihara.spectral import (
    AlternantSingularError,
    ConvergenceError,
    Cycle,
    brute_girth,
    confluent_alternant,
    cycle_space_basis,
    deck_spectrum,
    eigenspace_dims,
    evaluate_alternant,
    exact_rank,
    factor_char_poly,
    is_closed_walk,
    is_semisimple,
    is_simple_cycle,
    numeric_spectrum,
    nullity,
    pf_eigen,
    phi_map,
    psi_map,
    simple_cycles,
    solve_alternant,
    zero_has_nontrivial_block,
)
from ihara.zeta import graph_char_poly


def test_exact_rank():
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[0, 0], [0, 0]]) == 0
    assert nullity(np.identity(3, dtype=object)) == 0
    assert exact_rank([[10**30, 1], [1, 10**30]]) == 2
    assert exact_rank([[10**30, 10**31], [1, 10]]) == 1


def test_factorisation_banana5():
    assert factor_char_poly(graph_char_poly(banana(5))) == [
        ((-4, 1), 1),
        ((-1, 1), 4),
        ((1, 1), 4),
        ((4, 1), 1),
    ]


def test_spectrum_banana5():
    T = build_T(banana(5))
    spec = numeric_spectrum(T, graph_char_poly(banana(5)))
    assert spec.M == 4
    assert spec.multiplicity(1) == 4 and spec.multiplicity(-1) == 4
    assert sorted(e.value.real for e in spec.eigenvalues) == [-4, -1, 1, 4]
    assert spec.pm1_semisimple


def test_path_is_nilpotent_with_block():
    T = build_T(path(2))
    spec = numeric_spectrum(T, graph_char_poly(path(2)))
    assert [(e.algebraic, e.max_block) for e in spec.eigenvalues] == [(4, 2)]
    assert not is_semisimple(T, graph_char_poly(path(2)))


def test_semisimple_regular_graphs():
    for G in (complete(4), cube(), banana(4)):
        assert is_semisimple(build_T(G), graph_char_poly(G))


def test_deck_spectrum_bounds_blocks():
    spec = deck_spectrum(graph_char_poly(complete(6)), betti=10)
    assert all(e.max_block == 1 for e in spec.eigenvalues if e.factor in ((-1, 1), (1, 1)))
    assert spec.M == 13 <= complete(6).edge_count
    assert deck_spectrum(graph_char_poly(path(2)), betti=0).M == 4


class TestPerron:
    def test_banana5(self):
        pf = pf_eigen(build_T(banana(5)), banana(5))
        assert pf.value == pytest.approx(4, abs=1e-10)
        assert pf.sigma[0] == pytest.approx(2 / np.sqrt(10), abs=1e-10)
        assert pf.pi[0] == pytest.approx(0.1, abs=1e-10)
        assert 2 * sum(pf.pi) == pytest.approx(1, abs=1e-12)

    def test_k6(self):
        pf = pf_eigen(build_T(complete(6)), complete(6))
        assert pf.value == pytest.approx(4, abs=1e-10)
        assert all(p == pytest.approx(1 / 30, abs=1e-10) for p in pf.pi)

    @pytest.mark.parametrize("G", [path(3), cycle(5), Multigraph(4, ((0, 1), (2, 3)))])
    def test_reducible_rejected(self, G):
        with pytest.raises(ValueError):
            pf_eigen(build_T(G), G)

    def test_no_convergence(self):
        with pytest.raises(ConvergenceError):
            G = Multigraph(4, ((0, 1), (0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 1)))
            pf_eigen(build_T(G), G, max_iter=2)


class TestCycles:
    def test_basis_size_and_phi(self):
        for G in (complete(5), banana(4), Multigraph(3, ((0, 1), (1, 2), (2, 0), (1, 1), (0, 1)))):
            basis = cycle_space_basis(G)
            assert len(basis) == betti_number(G)
            T = build_T(G)
            for c in basis:
                assert is_closed_walk(G, c)
                v = phi_map(G, c)
                assert np.array_equal(T.dot(v), v)
            stacked = np.array([phi_map(G, c) for c in basis], dtype=object)
            assert exact_rank(stacked) == len(basis)

    def test_psi(self):
        G = complete_bipartite(3, 3)
        T = build_T(G)
        even = [c for c in simple_cycles(G, 6) if c.even]
        assert len(even) == 9 + 6
        for c in even:
            v = psi_map(G, c)
            assert np.array_equal(T.dot(v), -v)

    def test_psi_rejects(self):
        G = complete(4)
        tri = next(c for c in simple_cycles(G, 3))
        with pytest.raises(ValueError):
            psi_map(G, tri)
        walk = Cycle(((0, True), (0, False)))
        assert not is_simple_cycle(G, walk)

    def test_eigenspace_dims(self):
        for G in (complete(6), complete_bipartite(4, 4), octahedron(), banana(5)):
            p = predicates(G)
            dims = eigenspace_dims(build_T(G))
            assert (dims.dim_plus, dims.dim_minus) == (p.betti, p.betti - p.p)
        d = eigenspace_dims(build_T(complete(6)))
        assert (d.dim_plus, d.dim_minus) == (10, 9)

    def test_brute_girth(self):
        assert brute_girth(complete(4)) == (3, 4)
        assert brute_girth(cube()) == (4, 6)
        assert brute_girth(octahedron()) == (3, 8)
        assert brute_girth(banana(3)) == (2, 3)
        assert brute_girth(path(3)) is None


def test_zero_block_on_end_vertex():
    G = Multigraph(3, ((0, 1), (1, 1), (1, 2)))
    assert zero_has_nontrivial_block(build_T(G))
    assert not zero_has_nontrivial_block(build_T(complete(4)))


class TestAlternant:
    def test_vandermonde_determinant(self):
        alt = confluent_alternant([2, -2, 1, -1])
        assert float(alt.det) == pytest.approx(72)

    def test_confluent_recovers_sequence(self):
        # a_r = (r + 1) 3^r + (-1)^r
        seq = [(r + 1) * 3**r + (-1) ** r for r in range(10)]
        alt = confluent_alternant([3, -1], [2, 1])
        y = solve_alternant(alt, seq)
        for r in range(10):
            assert float(evaluate_alternant(alt, y, r)) == pytest.approx(seq[r], rel=1e-30)

    def test_coincident_values_rejected(self):
        with pytest.raises(AlternantSingularError):
            confluent_alternant([1, 1, 2])
