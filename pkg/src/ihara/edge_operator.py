"""The Bass-Hashimoto edge adjacency matrix and its indefinite form.

Oriented edges are indexed 0..2m-1: index ``i < m`` is edge ``i`` in its
listed orientation, index ``i + m`` the reverse.  For a loop both
orientations are distinct, and a loop orientation may follow itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .multigraph import Multigraph


@dataclass(frozen=True)
class OrientedEdge:
    edge_id: int
    forward: bool

    def reverse(self) -> "OrientedEdge":
        return OrientedEdge(self.edge_id, not self.forward)

    def index(self, m: int) -> int:
        return self.edge_id if self.forward else self.edge_id + m


def reverse_index(a: int, m: int) -> int:
    return a + m if a < m else a - m


def oriented_endpoints(G: Multigraph) -> list[tuple[int, int]]:
    """(origin, terminus) of every oriented edge, in index order."""
    fwd = list(G.edges)
    return fwd + [(v, u) for u, v in fwd]


def build_T(G: Multigraph) -> np.ndarray:
    """2|E| x 2|E| integer matrix (dtype object, so powers stay exact)."""
    m = G.edge_count
    if m < 1:
        raise ValueError("edge matrix needs at least one edge")
    ends = oriented_endpoints(G)
    n = 2 * m
    T = np.zeros((n, n), dtype=object)
    for a, (_, ta) in enumerate(ends):
        ra = reverse_index(a, m)
        for b, (ob, _) in enumerate(ends):
            if ta == ob and b != ra:
                T[a, b] = 1
    return T


def krein_form(m: int) -> np.ndarray:
    J = np.zeros((2 * m, 2 * m), dtype=object)
    for i in range(m):
        J[i, i + m] = 1
        J[i + m, i] = 1
    return J


def krein_product(v: Sequence, w: Sequence):
    """<v, w> = sum over oriented edges of v[a] * w[reverse(a)]."""
    if len(v) != len(w):
        raise ValueError("vectors must have equal length")
    if len(v) % 2:
        raise ValueError("vectors must have even length 2|E|")
    m = len(v) // 2
    return sum(v[a] * w[reverse_index(a, m)] for a in range(2 * m))


def check_J_symmetry(T: np.ndarray) -> bool:
    n = T.shape[0]
    if n % 2 or T.shape != (n, n):
        return False
    J = krein_form(n // 2)
    return bool(np.array_equal(T.T, J.dot(T).dot(J)))


def matrix_powers(T: np.ndarray, R: int) -> list[np.ndarray]:
    """[T^0, ..., T^R] with exact integer entries."""
    n = T.shape[0]
    powers = [np.identity(n, dtype=object)]
    for _ in range(R):
        powers.append(powers[-1].dot(T))
    return powers
