"""Per-edge non-backtracking walk statistics, by matrix powers and by explicit
enumeration, plus the closed/non-returning decomposition identities.

Conventions.  A walk of length r is a sequence of r + 1 oriented edges, each
continuing the previous one without reversing it (r transitions, matching
the entries of T^r).  For an oriented edge a:

* N_r(a): closed walks, first and last edge a (the diagonal of T^r);
* M_r(a): walks with first edge a (row sums of T^r);
* F_r(a): sum over i of (T^i)[a, a'] (T^(r-i))[a', a] with a' the reverse of
  a, i.e. closed walks at a weighted by their number of visits to a';
* O_r(a): walks with first edge a that never come back to a;
* W_r(a): walks (any start) that contain a.

Unoriented values: N_r(e) = 2 N_r(a), M_r(e) = M(a) + M(a'),
F_r(e) = 2 F_r(a), O_r(e) = O(a) + O(a'), and W_r(e) counts walks containing
a or a'.  Length 0 gives N_0(a) = M_0(a) = O_0(a) = W_0(a) = 1 and
W_0(e) = 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .edge_operator import build_T, matrix_powers, reverse_index
from .multigraph import Multigraph

BRUTE_FORCE_BUDGET = 10_000_000


class EnumerationBudgetExceeded(RuntimeError):
    pass


@dataclass
class WalkTable:
    R: int
    edge_count: int
    N: list[list[int]]   # [oriented edge][r]
    M: list[list[int]]
    F: list[list[int]]
    O: list[list[int]]
    W_oriented: list[list[int]]
    W_edge: list[list[int]]  # [edge][r]

    def _rev(self, a):
        return reverse_index(a, self.edge_count)

    def N_edge(self, e: int) -> list[int]:
        return [2 * x for x in self.N[e]]

    def M_edge(self, e: int) -> list[int]:
        return [x + y for x, y in zip(self.M[e], self.M[self._rev(e)])]

    def F_edge(self, e: int) -> list[int]:
        return [2 * x for x in self.F[e]]

    def O_edge(self, e: int) -> list[int]:
        return [x + y for x, y in zip(self.O[e], self.O[self._rev(e)])]

    def to_json(self) -> str:
        m = self.edge_count
        s = lambda rows: [[str(x) for x in row] for row in rows]  # noqa: E731
        payload = {
            "R": self.R,
            "edges": list(range(m)),
            "N": s(self.N_edge(e) for e in range(m)),
            "M": s(self.M_edge(e) for e in range(m)),
            "F": s(self.F_edge(e) for e in range(m)),
            "W": s(self.W_edge),
            "O": s(self.O_edge(e) for e in range(m)),
        }
        return json.dumps(payload, sort_keys=True)


def walk_counts_direct(G: Multigraph, R: int) -> WalkTable:
    if R < 0:
        raise ValueError("R must be non-negative")
    m = G.edge_count
    n = 2 * m
    T = build_T(G)
    Tp = matrix_powers(T, R)
    N = [[int(Tp[r][a, a]) for r in range(R + 1)] for a in range(n)]
    M = [[int(sum(Tp[r][a, :])) for r in range(R + 1)] for a in range(n)]
    F = []
    for a in range(n):
        ra = reverse_index(a, m)
        F.append([int(sum(Tp[i][a, ra] * Tp[r - i][ra, a] for i in range(r + 1))) for r in range(R + 1)])

    ones = np.ones(n, dtype=object)
    total = [int(ones.dot(Tp[r]).dot(ones)) for r in range(R + 1)]

    def walks_avoiding(banned):
        Tb = T.copy()
        for b in banned:
            Tb[:, b] = 0
        x = ones.copy()
        for b in banned:
            x[b] = 0
        out = []
        for _ in range(R + 1):
            out.append(int(x.sum()))
            x = x.dot(Tb)
        return out

    O = []
    for a in range(n):
        Ta = T.copy()
        Ta[:, a] = 0
        x = np.zeros(n, dtype=object)
        x[a] = 1
        row = []
        for _ in range(R + 1):
            row.append(int(x.sum()))
            x = x.dot(Ta)
        O.append(row)
    W_or = [[t - av for t, av in zip(total, walks_avoiding([a]))] for a in range(n)]
    W_edge = [
        [t - av for t, av in zip(total, walks_avoiding([e, e + m]))] for e in range(m)
    ]
    return WalkTable(R, m, N, M, F, O, W_or, W_edge)


def walk_counts_brute(G: Multigraph, R: int, budget: int = BRUTE_FORCE_BUDGET) -> WalkTable:
    """Explicit depth-first enumeration of every walk of length <= R."""
    if R < 0:
        raise ValueError("R must be non-negative")
    m = G.edge_count
    n = 2 * m
    ends = list(G.edges) + [(v, u) for u, v in G.edges]
    succ = [
        [b for b in range(n) if ends[b][0] == ends[a][1] and b != reverse_index(a, m)]
        for a in range(n)
    ]
    N = [[0] * (R + 1) for _ in range(n)]
    M = [[0] * (R + 1) for _ in range(n)]
    F = [[0] * (R + 1) for _ in range(n)]
    O = [[0] * (R + 1) for _ in range(n)]
    W_or = [[0] * (R + 1) for _ in range(n)]
    W_edge = [[0] * (R + 1) for _ in range(m)]

    visited = 0
    occ = [0] * n
    eocc = [0] * m
    present: list[int] = []
    epresent: list[int] = []

    for start in range(n):
        rstart = reverse_index(start, m)
        # stack of (edge, depth, next-successor-position)
        path = [start]
        occ[start] = 1
        eocc[start % m] = 1
        present.append(start)
        epresent.append(start % m)
        cursor = [0]
        while path:
            depth = len(path) - 1
            if cursor[-1] == 0:
                visited += 1
                if visited > budget:
                    raise EnumerationBudgetExceeded(f"more than {budget} walk extensions")
                last = path[-1]
                M[start][depth] += 1
                if last == start:
                    N[start][depth] += 1
                    F[start][depth] += occ[rstart]
                if occ[start] == 1:
                    O[start][depth] += 1
                for b in present:
                    W_or[b][depth] += 1
                for e in epresent:
                    W_edge[e][depth] += 1
            last = path[-1]
            nxt = succ[last]
            if depth < R and cursor[-1] < len(nxt):
                b = nxt[cursor[-1]]
                cursor[-1] += 1
                path.append(b)
                cursor.append(0)
                occ[b] += 1
                if occ[b] == 1:
                    present.append(b)
                e = b % m
                eocc[e] += 1
                if eocc[e] == 1:
                    epresent.append(e)
            else:
                b = path.pop()
                cursor.pop()
                occ[b] -= 1
                if occ[b] == 0:
                    present.remove(b)
                e = b % m
                eocc[e] -= 1
                if eocc[e] == 0:
                    epresent.remove(e)
    # W counts walks by any start: each walk was enumerated once from its first edge.
    return WalkTable(R, m, N, M, F, O, W_or, W_edge)


def _conv(a, b, r):
    return sum(a[i] * b[r - i] for i in range(r + 1))


def verify_decompositions(table: WalkTable | Multigraph, R: int | None = None, offset: int = 0) -> bool:
    """Check the closed/non-returning decompositions on every oriented edge.

    ``table`` may be a graph, in which case brute-force tables up to ``R``
    are used.

    With a' the reverse of a and all lengths counted in transitions:

        M_r(a)  = sum_{i+j=r}   N_i(a) O_j(a)
        W_r(a)  = sum_{i+j+k=r} O_i(a') N_j(a) O_k(a)

    (cut a walk at its last, resp. first and last, occurrence of a; the
    prefix before the first occurrence is a reversed non-returning walk
    from a').  Summing over both orientations gives
    M_r(e) = sum N_i(a) O_j(e) for the unoriented edge.  ``offset`` shifts
    the closed-walk index and exists to show that the check has teeth.
    """
    if isinstance(table, Multigraph):
        table = walk_counts_brute(table, 6 if R is None else R)
    m = table.edge_count
    R = table.R
    for a in range(2 * m):
        ra = reverse_index(a, m)
        Na = [0] * offset + table.N[a]
        for r in range(R + 1):
            if table.M[a][r] != _conv(Na, table.O[a], r):
                return False
            rhs = sum(
                table.O[ra][i] * Na[j] * table.O[a][r - i - j]
                for i in range(r + 1)
                for j in range(r + 1 - i)
            )
            if table.W_oriented[a][r] != rhs:
                return False
    return True


def square_identity_holds(table: WalkTable, e: int) -> bool:
    """Whether sum M_i M_j = sum W_i N_j (i + j = r) holds at edge e for r <= R.

    It does when the two orientations of e have equal non-returning counts
    (e.g. when an automorphism reverses e) but fails in general; kept as a
    probe, not as an invariant.
    """
    Me, We, Ne = table.M_edge(e), table.W_edge[e], table.N_edge(e)
    return all(_conv(Me, Me, r) == _conv(We, Ne, r) for r in range(table.R + 1))
