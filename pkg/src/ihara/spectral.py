"""Spectrum of T: exact factor structure and Jordan block sizes, the
Perron-Frobenius pair, the +/-1 eigenspaces built from cycles, and the
confluent alternant used to extend walk counts."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import comb

import mpmath
import numpy as np
import sympy

from . import polynomials as P
from .edge_operator import krein_product, reverse_index
from .multigraph import Multigraph, betti_number, has_end_vertex, is_connected

MP_DPS = 60


class AlternantSingularError(ArithmeticError):
    """The confluent alternant is numerically singular or its determinant is off."""


class ConvergenceError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------

def exact_rank(M) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination on Python ints."""
    A = [[int(x) for x in row] for row in np.asarray(M, dtype=object).tolist()]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    rank = 0
    prev = 1
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if A[r][c] != 0), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        p = A[rank][c]
        for r in range(rank + 1, rows):
            a = A[r][c]
            A[r] = [(p * A[r][j] - a * A[rank][j]) // prev for j in range(cols)]
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def nullity(M) -> int:
    return np.asarray(M).shape[1] - exact_rank(M)


def matrix_poly(T, poly) -> np.ndarray:
    """poly(T) by Horner's rule, exact."""
    T = np.asarray(T, dtype=object)
    n = T.shape[0]
    eye = np.identity(n, dtype=object)
    acc = np.zeros((n, n), dtype=object)
    for c in reversed(list(poly)):
        acc = acc.dot(T) + int(c) * eye
    return acc


def is_semisimple(T, char) -> bool:
    """T is diagonalisable over C iff the square-free part of char kills T."""
    lam = sympy.Symbol("lam")
    p = sympy.Poly(list(reversed(P.trim(char))), lam)
    sqf = sympy.quo(p, sympy.gcd(p, p.diff(lam)))
    coeffs = [int(c) for c in reversed(sqf.all_coeffs())]
    return not np.any(matrix_poly(T, coeffs))


# ---------------------------------------------------------------------------
# spectrum report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Eigenvalue:
    value: complex
    algebraic: int
    max_block: int
    factor: tuple[int, ...]   # irreducible integer factor this root belongs to

    @property
    def semisimple(self) -> bool:
        return self.max_block == 1


@dataclass
class SpectrumReport:
    eigenvalues: list[Eigenvalue]
    pm1_semisimple: bool
    mp_values: list = field(default_factory=list, repr=False)

    @property
    def M(self) -> int:
        return sum(e.max_block for e in self.eigenvalues)

    def multiplicity(self, value: int) -> int:
        return sum(e.algebraic for e in self.eigenvalues if e.factor == (-value, 1))

    def to_json(self) -> dict:
        return {
            "eigenvalues": [
                {
                    "re": repr(e.value.real),
                    "im": repr(e.value.imag),
                    "algebraic": e.algebraic,
                    "max_block": e.max_block,
                }
                for e in self.eigenvalues
            ],
            "M": self.M,
            "multiplicity_plus1": self.multiplicity(1),
            "multiplicity_minus1": self.multiplicity(-1),
            "pm1_semisimple": self.pm1_semisimple,
        }


def factor_char_poly(char) -> list[tuple[tuple[int, ...], int]]:
    """Irreducible integer factors (ascending coefficients) with multiplicities."""
    lam = sympy.Symbol("lam")
    p = sympy.Poly(list(reversed(P.trim(char))), lam)
    _, factors = sympy.factor_list(p)
    out = []
    for f, mult in factors:
        coeffs = tuple(int(c) for c in reversed(f.all_coeffs()))
        if coeffs[-1] < 0:
            coeffs = tuple(-c for c in coeffs)
        out.append((coeffs, mult))
    out.sort(key=lambda item: (len(item[0]), item[0]))
    return out


def factor_roots(factor) -> list:
    """Roots of an irreducible factor at MP_DPS digits, sorted by (-re, -im)."""
    if len(factor) == 2:
        return [mpmath.mpf(-factor[0]) / factor[1]]
    with mpmath.workdps(MP_DPS):
        roots = mpmath.polyroots(list(reversed(factor)), maxsteps=400, extraprec=4 * MP_DPS)
        roots = [mpmath.mpf(mpmath.re(r)) if mpmath.im(r) == 0 else r for r in roots]
    return sorted(roots, key=lambda r: (-float(mpmath.re(r)), -float(mpmath.im(r))))


def index_of_factor(T, factor, algebraic: int) -> int:
    """Largest Jordan block of the roots of ``factor``: the least k with
    nullity(f(T)^k) = deg(f) * algebraic, computed exactly."""
    target = (len(factor) - 1) * algebraic
    fT = matrix_poly(T, factor)
    acc = fT
    for k in range(1, algebraic + 1):
        if nullity(acc) == target:
            return k
        acc = acc.dot(fT)
    return algebraic


def numeric_spectrum(T, char) -> SpectrumReport:
    """Distinct eigenvalues with algebraic multiplicities and maximal Jordan
    block sizes.  Multiplicities come from the exact factorisation of the
    characteristic polynomial and block sizes from exact ranks of f(T)^k, so
    no clustering tolerance is involved; only the root values are numeric."""
    eigs = []
    mp_vals = []
    pm1 = True
    for factor, mult in factor_char_poly(char):
        block = index_of_factor(T, factor, mult) if T is not None else mult
        if factor in ((-1, 1), (1, 1)) and block > 1:
            pm1 = False
        for root in factor_roots(factor):
            eigs.append(Eigenvalue(complex(root), mult, block, factor))
            mp_vals.append(root)
    return SpectrumReport(eigs, pm1, mp_vals)


def deck_spectrum(char, betti: int | None = None) -> SpectrumReport:
    """Spectrum data available without T: exact multiplicities, with block
    sizes bounded by 1 for +/-1 (semisimple when b_1 > 1) and by the
    algebraic multiplicity otherwise."""
    eigs = []
    mp_vals = []
    for factor, mult in factor_char_poly(char):
        if factor in ((-1, 1), (1, 1)) and (betti is None or betti > 1):
            block = 1
        else:
            block = mult
        for root in factor_roots(factor):
            eigs.append(Eigenvalue(complex(root), mult, block, factor))
            mp_vals.append(root)
    return SpectrumReport(eigs, True, mp_vals)


# ---------------------------------------------------------------------------
# Perron-Frobenius data
# ---------------------------------------------------------------------------

@dataclass
class PFData:
    value: float
    vector: np.ndarray
    sigma: list[float]
    pi: list[float]
    residual: float

    def to_json(self) -> dict:
        return {
            "lambda_pf": repr(self.value),
            "p": [repr(float(x)) for x in self.vector],
            "sigma": [repr(x) for x in self.sigma],
            "pi": [repr(x) for x in self.pi],
            "residual": repr(self.residual),
        }


def check_irreducible(G: Multigraph) -> None:
    if not is_connected(G):
        raise ValueError("T is irreducible only for connected graphs")
    if has_end_vertex(G):
        raise ValueError("T is reducible when the graph has an end-vertex")
    if any(d == 0 for d in G.degrees()):
        raise ValueError("isolated vertices are not allowed")
    if betti_number(G) < 2:
        raise ValueError("T is irreducible only when b_1 >= 2")


def pf_eigen(T, G: Multigraph | None = None, tol: float = 1e-12, max_iter: int = 200_000) -> PFData:
    """Power iteration on T + I (same eigenvector, no peripheral rivals)."""
    if G is not None:
        check_irreducible(G)
    A = np.asarray(T, dtype=float)
    n = A.shape[0]
    m = n // 2
    shifted = A + np.identity(n)
    x = np.ones(n) / n
    lam = 0.0
    for _ in range(max_iter):
        y = shifted @ x
        y /= y.max()
        Tx = A @ y
        lam = float(Tx @ y / (y @ y))
        res = float(np.max(np.abs(Tx - lam * y)))
        x = y
        if res < tol * max(1.0, lam):
            break
    else:
        raise ConvergenceError(f"power iteration did not reach residual {tol}")
    if np.any(x <= 0):
        raise ConvergenceError("Perron vector has non-positive entries; is T irreducible?")
    x = x / np.sqrt(krein_product(x, x))
    res = float(np.max(np.abs(A @ x - lam * x)))
    sigma = [float(x[e] + x[e + m]) for e in range(m)]
    pi = [float(x[e] * x[e + m]) for e in range(m)]
    return PFData(lam, x, sigma, pi, res)


# ---------------------------------------------------------------------------
# cycles and the +/-1 eigenspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cycle:
    """A closed walk given by its steps (edge id, traversed forward?)."""

    steps: tuple[tuple[int, bool], ...]

    def __len__(self):
        return len(self.steps)

    def chain(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for e, fwd in self.steps:
            out[e] = out.get(e, 0) + (1 if fwd else -1)
        return {e: c for e, c in out.items() if c}

    @property
    def even(self) -> bool:
        return len(self.steps) % 2 == 0


def _step_ends(G: Multigraph, step):
    e, fwd = step
    u, v = G.edges[e]
    return (u, v) if fwd else (v, u)


def is_closed_walk(G: Multigraph, c: Cycle) -> bool:
    if not c.steps:
        return True
    ends = [_step_ends(G, s) for s in c.steps]
    return all(ends[i][1] == ends[(i + 1) % len(ends)][0] for i in range(len(ends)))


def is_simple_cycle(G: Multigraph, c: Cycle) -> bool:
    if not c.steps or not is_closed_walk(G, c):
        return False
    origins = [_step_ends(G, s)[0] for s in c.steps]
    ids = [e for e, _ in c.steps]
    return len(set(origins)) == len(origins) and len(set(ids)) == len(ids)


def cycle_space_basis(G: Multigraph) -> list[Cycle]:
    """Fundamental cycles of a breadth-first spanning tree rooted at 0."""
    if not is_connected(G):
        raise ValueError("cycle space basis needs a connected graph")
    n = G.vertex_count
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(G.edges):
        adj[u].append((i, v))
        if u != v:
            adj[v].append((i, u))
    parent_edge: list[int | None] = [None] * n
    depth = [-1] * n
    depth[0] = 0
    tree = set()
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for i, y in adj[x]:
            if depth[y] < 0:
                depth[y] = depth[x] + 1
                parent_edge[y] = i
                tree.add(i)
                queue.append(y)

    def step_towards_parent(x):
        i = parent_edge[x]
        u, v = G.edges[i]
        return (i, u == x), (v if u == x else u)

    basis = []
    for i, (u, v) in enumerate(G.edges):
        if i in tree:
            continue
        # u -> v along the edge, then v back to u through the tree
        up_from_v, up_from_u = [], []
        a, b = v, u
        while depth[a] > depth[b]:
            s, a = step_towards_parent(a)
            up_from_v.append(s)
        while depth[b] > depth[a]:
            s, b = step_towards_parent(b)
            up_from_u.append(s)
        while a != b:
            s, a = step_towards_parent(a)
            up_from_v.append(s)
            s, b = step_towards_parent(b)
            up_from_u.append(s)
        down_to_u = [(e, not fwd) for e, fwd in reversed(up_from_u)]
        basis.append(Cycle(((i, True),) + tuple(up_from_v) + tuple(down_to_u)))
    return basis


def simple_cycles(G: Multigraph, max_length: int) -> list[Cycle]:
    """Every simple cycle (loops and 2-gons included) of length <= max_length,
    one traversal per edge set."""
    n = G.vertex_count
    adj: list[list[tuple[int, int, bool]]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(G.edges):
        adj[u].append((i, v, True))
        if u != v:
            adj[v].append((i, u, False))
    seen = set()
    out = []
    for s in range(n):
        stack = [(s, [], [s])]
        while stack:
            x, steps, verts = stack.pop()
            for i, y, fwd in adj[x]:
                if steps and i == steps[-1][0]:
                    continue
                if y == s:
                    cyc = steps + [(i, fwd)]
                    key = frozenset(e for e, _ in cyc)
                    if len(key) == len(cyc) and key not in seen:
                        seen.add(key)
                        out.append(Cycle(tuple(cyc)))
                elif y > s and y not in verts and len(steps) + 1 < max_length:
                    stack.append((y, steps + [(i, fwd)], verts + [y]))
    out.sort(key=lambda c: (len(c), sorted(e for e, _ in c.steps)))
    return [c for c in out if len(c) <= max_length]


def brute_girth(G: Multigraph) -> tuple[int, int] | None:
    """(girth, number of shortest cycles) by enumerating simple cycles."""
    cycles = simple_cycles(G, G.vertex_count)
    if not cycles:
        return None
    g = min(len(c) for c in cycles)
    return g, sum(1 for c in cycles if len(c) == g)


def phi_map(G: Multigraph, c: Cycle) -> np.ndarray:
    """sum over the chain of c of (forward - reverse); a fixed vector of T."""
    if not is_closed_walk(G, c):
        raise ValueError("phi is defined on cycles")
    m = G.edge_count
    v = np.zeros(2 * m, dtype=object)
    for e, k in c.chain().items():
        v[e] += k
        v[e + m] -= k
    return v


def psi_map(G: Multigraph, c: Cycle) -> np.ndarray:
    """Alternating sum of (forward + reverse) along an even simple cycle."""
    if not c.even:
        raise ValueError("psi needs an even cycle")
    if not is_simple_cycle(G, c):
        raise ValueError("psi is applied to simple cycles")
    m = G.edge_count
    v = np.zeros(2 * m, dtype=object)
    for j, (e, _) in enumerate(c.steps):
        k = 1 if j % 2 == 0 else -1
        v[e] += k
        v[e + m] += k
    return v


@dataclass(frozen=True)
class EigenspaceDims:
    dim_plus: int
    dim_minus: int


def eigenspace_dims(T) -> EigenspaceDims:
    T = np.asarray(T, dtype=object)
    eye = np.identity(T.shape[0], dtype=object)
    return EigenspaceDims(nullity(T - eye), nullity(T + eye))


def zero_has_nontrivial_block(T) -> bool:
    T = np.asarray(T, dtype=object)
    return nullity(T.dot(T)) > nullity(T)


# ---------------------------------------------------------------------------
# confluent alternant
# ---------------------------------------------------------------------------

def _mp_pow(x, k):
    return mpmath.mpf(1) if k == 0 else x ** k


def alternant_row(values, blocks, r):
    """Row r of the alternant: binom(r, l) * lambda_i^(r - l)."""
    row = []
    for lam, M in zip(values, blocks):
        for l in range(M):
            row.append(comb(r, l) * _mp_pow(lam, r - l) if r >= l else mpmath.mpf(0))
    return row


@dataclass
class Alternant:
    matrix: mpmath.matrix
    det: mpmath.mpc
    expected: mpmath.mpc
    values: list
    blocks: list[int]


def confluent_alternant(values, blocks=None, rel_tol: float = 1e-8) -> Alternant:
    """M x M matrix (M = sum of blocks) with determinant checked against
    prod_{i<j} (lambda_j - lambda_i)^(M_i M_j).

    ``values`` may be a SpectrumReport, whose block sizes are then used.
    """
    if isinstance(values, SpectrumReport):
        blocks = [e.max_block for e in values.eigenvalues]
        values = values.mp_values or [e.value for e in values.eigenvalues]
    if blocks is None:
        blocks = [1] * len(values)
    with mpmath.workdps(MP_DPS):
        values = [mpmath.mpmathify(v) for v in values]
        size = sum(blocks)
        V = mpmath.matrix(size, size)
        for r in range(size):
            for c, x in enumerate(alternant_row(values, blocks, r)):
                V[r, c] = x
        try:
            det = mpmath.det(V) if size else mpmath.mpf(1)
        except (ZeroDivisionError, TypeError):
            # mpmath's LU step breaks down on an exactly singular matrix
            det = mpmath.mpf(0)
        expected = mpmath.mpf(1)
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                expected *= (values[j] - values[i]) ** (blocks[i] * blocks[j])
        scale = max(abs(expected), mpmath.mpf(10) ** (-MP_DPS // 2))
        if abs(expected) == 0 or abs(det) < rel_tol * scale or abs(det - expected) > rel_tol * scale:
            raise AlternantSingularError(
                f"alternant determinant {mpmath.nstr(det, 8)} vs expected {mpmath.nstr(expected, 8)}"
            )
        return Alternant(V, det, expected, values, list(blocks))


def solve_alternant(alt: Alternant, samples) -> list:
    """Coefficients y with sum_i sum_l binom(r, l) lambda_i^(r-l) y_{i,l} = samples[r]."""
    with mpmath.workdps(MP_DPS):
        rhs = mpmath.matrix([mpmath.mpf(int(s)) for s in samples[: alt.matrix.rows]])
        y = mpmath.lu_solve(alt.matrix, rhs)
        return [y[i] for i in range(alt.matrix.rows)]


def evaluate_alternant(alt: Alternant, y, r: int):
    with mpmath.workdps(MP_DPS):
        return mpmath.fsum(a * b for a, b in zip(alternant_row(alt.values, alt.blocks, r), y))
