"""Exact characteristic polynomial of T, the Bass identity, the inverse zeta
series, closed-walk totals and the girth read-out."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import polynomials as P
from .edge_operator import build_T
from .multigraph import Multigraph, canonical_form, is_connected


def char_poly(T) -> list[int]:
    """det(lambda - T) by the Faddeev-LeVerrier recursion over the integers.

    Ascending coefficients, monic of degree n.  Each division by k is exact.
    """
    T = np.asarray(T, dtype=object)
    n = T.shape[0]
    if n == 0:
        return [1]
    c = [0] * (n + 1)
    c[n] = 1
    M = np.zeros((n, n), dtype=object)
    eye = np.identity(n, dtype=object)
    for k in range(1, n + 1):
        M = T.dot(M) + c[n - k + 1] * eye
        tr = int(np.trace(T.dot(M)))
        q, r = divmod(-tr, k)
        if r:
            raise ArithmeticError("Faddeev-LeVerrier step was not exact")
        c[n - k] = q
    return c


def graph_char_poly(G: Multigraph) -> list[int]:
    """char_poly(build_T(G)); the edgeless graph gives the constant 1."""
    if G.edge_count == 0:
        return [1]
    return char_poly(build_T(G))


@lru_cache(maxsize=100_000)
def _char_poly_by_class(key: str, n: int, edges: tuple) -> tuple[int, ...]:
    return tuple(graph_char_poly(Multigraph(n, edges)))


def cached_char_poly(G: Multigraph) -> list[int]:
    """graph_char_poly memoised on the isomorphism class."""
    return list(_char_poly_by_class(canonical_form(G), G.vertex_count, G.edges))


def bass_polynomial(G: Multigraph) -> list[int]:
    """B(lambda) = det(lambda^2 - A lambda + (D - 1)), degree 2|V|.

    A has loop entries 2 on the diagonal.  Evaluated as the characteristic
    polynomial of the companion linearisation [[0, I], [-(D - 1), A]].
    """
    return _bass_with(G, G.adjacency())


def verify_bass_identity(G: Multigraph, adjacency=None) -> bool:
    """char_poly(T) == (lambda^2 - 1)^(|E| - |V|) * B(lambda), exactly.

    ``adjacency`` overrides A (used to demonstrate that a wrong A is caught).
    """
    if not is_connected(G):
        raise ValueError("the Bass identity is checked on connected graphs")
    lhs = graph_char_poly(G)
    if adjacency is None:
        B = bass_polynomial(G)
    else:
        B = _bass_with(G, adjacency)
    k = G.edge_count - G.vertex_count
    factor = P.binomial_poly(abs(k), -1)
    if k >= 0:
        return P.trim(lhs) == P.poly_mul(factor, B)
    return P.poly_mul(lhs, factor) == P.trim(B)


def _bass_with(G: Multigraph, A) -> list[int]:
    n = G.vertex_count
    deg = G.degrees()
    L = np.zeros((2 * n, 2 * n), dtype=object)
    for i in range(n):
        L[i, n + i] = 1
        L[n + i, i] = -(deg[i] - 1)
        for j in range(n):
            L[n + i, n + j] = A[i][j]
    return char_poly(L)


def zeta_inverse_series(char: list[int], order: int) -> P.RationalSeries:
    """Coefficients of det(1 - uT) = u^(2|E|) char(1/u), truncated."""
    if order < 0:
        raise ValueError("order must be non-negative")
    n = len(P.trim(char)) - 1
    return P.RationalSeries(P.reverse(char, n)[: order + 1], order)


def zeta_inverse_poly(char: list[int]) -> list[int]:
    n = len(P.trim(char)) - 1
    return P.trim(P.reverse(char, n))


def total_closed_walks(char: list[int], R: int) -> list[int]:
    """N_1..N_R, N_r = tr(T^r), by Newton's identities on the roots of ``char``."""
    if R < 1:
        raise ValueError("R must be at least 1")
    return P.power_sums(char, R)


@dataclass(frozen=True)
class GirthReport:
    girth: int
    g_gon_count: int


def girth_and_polygons(char: list[int], edge_count: int) -> GirthReport | None:
    """Girth and number of girth-cycles from the first non-zero sub-leading coefficient.

    Returns None if every sub-leading coefficient vanishes (acyclic core).
    """
    top = 2 * edge_count
    for i in range(top - 1, -1, -1):
        c = P.coeff(char, i)
        if c:
            if c % 2:
                raise ArithmeticError("sub-leading coefficient is odd; not an edge-matrix polynomial")
            return GirthReport(girth=top - i, g_gon_count=-c // 2)
    return None
