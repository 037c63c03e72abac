"""Named test graphs and random multigraph generators."""

from __future__ import annotations

import random
from itertools import combinations

from .multigraph import Multigraph, canonical_form, is_connected


def banana(m: int) -> Multigraph:
    """Two vertices joined by ``m`` parallel edges."""
    return Multigraph(2, ((0, 1),) * m)


def complete(n: int) -> Multigraph:
    return Multigraph(n, tuple(combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> Multigraph:
    return Multigraph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def octahedron() -> Multigraph:
    # K_{2,2,2}: every pair except the three antipodal ones
    antipodal = {(0, 1), (2, 3), (4, 5)}
    return Multigraph(6, tuple(e for e in combinations(range(6), 2) if e not in antipodal))


def cycle(n: int) -> Multigraph:
    if n == 1:
        return Multigraph(1, ((0, 0),))
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n_edges: int) -> Multigraph:
    return Multigraph(n_edges + 1, tuple((i, i + 1) for i in range(n_edges)))


def single_loop() -> Multigraph:
    return Multigraph(1, ((0, 0),))


def cube() -> Multigraph:
    edges = []
    for v in range(8):
        for bit in (1, 2, 4):
            w = v ^ bit
            if v < w:
                edges.append((v, w))
    return Multigraph(8, tuple(edges))


def random_multigraph(
    rng: random.Random,
    n: int,
    m: int,
    loop_prob: float = 0.1,
    connected: bool = True,
    max_tries: int = 1000,
) -> Multigraph:
    """Random multigraph on ``n`` vertices and ``m`` edges.

    With ``connected`` a random spanning tree is laid down first, so ``m``
    must be at least ``n - 1``.
    """
    if connected and m < n - 1:
        raise ValueError("a connected graph needs m >= n - 1")
    for _ in range(max_tries):
        edges = []
        if connected:
            order = list(range(n))
            rng.shuffle(order)
            for i in range(1, n):
                edges.append((order[rng.randrange(i)], order[i]))
        while len(edges) < m:
            if rng.random() < loop_prob:
                v = rng.randrange(n)
                edges.append((v, v))
            else:
                u, v = rng.sample(range(n), 2) if n > 1 else (0, 0)
                edges.append((u, v))
        rng.shuffle(edges)
        G = Multigraph(n, tuple(edges))
        if not connected or is_connected(G):
            return G
    raise RuntimeError("could not generate a graph with the requested properties")


def random_dense_multigraph(rng: random.Random, n: int, m: int, loop_prob: float = 0.1) -> Multigraph:
    """Connected multigraph with average degree 2m/n and no end-vertices."""
    for _ in range(1000):
        G = random_multigraph(rng, n, m, loop_prob=loop_prob)
        if all(d >= 2 for d in G.degrees()):
            return G
    raise RuntimeError("could not avoid end-vertices")


def connected_multigraphs(max_edges: int, loops: bool = True) -> list[Multigraph]:
    """All connected multigraphs with 1..max_edges edges, one per isomorphism class.

    Every connected multigraph arises from a smaller one by adding an edge
    that touches an existing vertex, so breadth-first growth is exhaustive.
    """
    if max_edges < 1:
        return []
    level = {}
    seeds = [Multigraph(2, ((0, 1),))]
    if loops:
        seeds.append(Multigraph(1, ((0, 0),)))
    for G in seeds:
        level[canonical_form(G)] = G
    out = list(level.values())
    for _ in range(max_edges - 1):
        nxt = {}
        for G in level.values():
            n = G.vertex_count
            for u in range(n):
                for v in range(u, n + 1):
                    if u == v and not loops:
                        continue
                    H = Multigraph(max(n, v + 1), G.edges + ((u, v),))
                    key = canonical_form(H)
                    if key not in nxt:
                        nxt[key] = H
        level = nxt
        out.extend(level[k] for k in sorted(level))
    return out
