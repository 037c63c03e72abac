"""Multigraphs with loops and parallel edges, canonical forms, edge decks and
subgraph counting.

Edges are stored in a tuple; the position of an edge is its id.  The pair
order of an edge fixes its forward orientation.  Loops count twice towards
the degree of their vertex.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

MAX_CANONICAL_VERTICES = 12


class GraphFormatError(ValueError):
    """Raised for malformed graph files or invalid edge references."""


class SizeLimitError(ValueError):
    """Raised when an exhaustive routine is asked to go beyond desk scale."""


class InexactDivisionError(ArithmeticError):
    """A deck-derived count did not divide exactly (corrupted deck or misuse)."""


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.vertex_count < 0:
            raise GraphFormatError("negative vertex count")
        for u, v in edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphFormatError(
                    f"edge ({u}, {v}) references a vertex outside [0, {self.vertex_count})"
                )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def loop_count(self) -> int:
        return sum(1 for u, v in self.edges if u == v)

    def adjacency(self) -> list[list[int]]:
        """Vertex adjacency matrix; a loop adds 2 on the diagonal."""
        n = self.vertex_count
        A = [[0] * n for _ in range(n)]
        for u, v in self.edges:
            if u == v:
                A[u][u] += 2
            else:
                A[u][v] += 1
                A[v][u] += 1
        return A

    def add_edge(self, u: int, v: int) -> "Multigraph":
        return Multigraph(self.vertex_count, self.edges + ((u, v),))

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        """Vertex ``v`` becomes ``perm[v]``; edge order is preserved."""
        return Multigraph(self.vertex_count, tuple((perm[u], perm[v]) for u, v in self.edges))

    def __str__(self) -> str:
        return format_graph(self)


def parse_graph(text: str) -> Multigraph:
    """Parse the ``n m`` header plus ``m`` lines of ``u v`` pairs.

    Blank lines and lines starting with ``#`` are ignored.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((lineno, int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {raw!r}") from None
    if not rows:
        raise GraphFormatError("missing header line")
    _, n, m = rows[0]
    if n < 0 or m < 0:
        raise GraphFormatError("header values must be non-negative")
    body = rows[1:]
    if m == 0 or not body:
        raise GraphFormatError("empty edge list")
    if len(body) != m:
        raise GraphFormatError(f"header announces {m} edges but {len(body)} were given")
    for lineno, u, v in body:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {lineno}: vertex index out of range [0, {n})")
    return Multigraph(n, tuple((u, v) for _, u, v in body))


def format_graph(G: Multigraph) -> str:
    lines = [f"{G.vertex_count} {G.edge_count}"]
    lines += [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def components(G: Multigraph) -> list[list[int]]:
    parent = list(range(G.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in G.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for v in range(G.vertex_count):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_connected(G: Multigraph) -> bool:
    return G.vertex_count > 0 and len(components(G)) == 1


def is_bipartite(G: Multigraph) -> bool:
    color = [-1] * G.vertex_count
    adj: list[list[int]] = [[] for _ in range(G.vertex_count)]
    for u, v in G.edges:
        if u == v:
            return False
        adj[u].append(v)
        adj[v].append(u)
    for s in range(G.vertex_count):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    stack.append(y)
                elif color[y] == color[x]:
                    return False
    return True


def has_end_vertex(G: Multigraph) -> bool:
    return any(d == 1 for d in G.degrees())


def betti_number(G: Multigraph) -> int:
    """First Betti number |E| - |V| + c (c = number of components)."""
    return G.edge_count - G.vertex_count + len(components(G))


@dataclass(frozen=True)
class Predicates:
    connected: bool
    has_end_vertex: bool
    bipartite: bool
    p: int
    betti: int | None
    avg_degree: Fraction


def predicates(G: Multigraph) -> Predicates:
    connected = is_connected(G)
    bip = is_bipartite(G)
    avg = Fraction(2 * G.edge_count, G.vertex_count) if G.vertex_count else Fraction(0)
    return Predicates(
        connected=connected,
        has_end_vertex=has_end_vertex(G),
        bipartite=bip,
        p=0 if bip else 1,
        betti=G.edge_count - G.vertex_count + 1 if connected else None,
        avg_degree=avg,
    )


def delete_edges(G: Multigraph, ids: Iterable[int]) -> Multigraph:
    ids = set(ids)
    for i in ids:
        if not 0 <= i < G.edge_count:
            raise IndexError(f"invalid edge id {i}")
    return Multigraph(G.vertex_count, tuple(e for i, e in enumerate(G.edges) if i not in ids))


def strip_isolated(G: Multigraph) -> Multigraph:
    """Drop vertices of degree 0, relabelling the rest in increasing order."""
    used = sorted({x for e in G.edges for x in e})
    index = {v: i for i, v in enumerate(used)}
    return Multigraph(len(used), tuple((index[u], index[v]) for u, v in G.edges))


# ---------------------------------------------------------------------------
# canonical forms (individualisation-refinement over multiplicity matrices)
# ---------------------------------------------------------------------------

def _multiplicity_matrix(n: int, edges) -> list[list[int]]:
    A = [[0] * n for _ in range(n)]
    for u, v in edges:
        if u == v:
            A[u][u] += 1
        else:
            A[u][v] += 1
            A[v][u] += 1
    return A


def _refine(A, cells: list[list[int]]) -> list[list[int]]:
    while True:
        new_cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {
                v: tuple(sum(A[v][w] for w in other) for other in cells)
                for v in cell
            }
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            if len(groups) > 1:
                changed = True
            for key in sorted(groups):
                new_cells.append(groups[key])
        cells = new_cells
        if not changed:
            return cells


def _search(A, cells, best):
    for idx, cell in enumerate(cells):
        if len(cell) > 1:
            break
    else:
        order = [c[0] for c in cells]
        n = len(order)
        code = tuple(A[order[i]][order[j]] for i in range(n) for j in range(i, n))
        if best[0] is None or code < best[0]:
            best[0] = code
        return
    for v in cell:
        rest = [w for w in cell if w != v]
        branched = cells[:idx] + [[v], rest] + cells[idx + 1:]
        _search(A, _refine(A, branched), best)


@lru_cache(maxsize=200_000)
def _canonical_code(n: int, edges: tuple) -> str:
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    isolated = sum(1 for d in deg if d == 0)
    live = [v for v in range(n) if deg[v] > 0]
    index = {v: i for i, v in enumerate(live)}
    k = len(live)
    A = _multiplicity_matrix(k, [(index[u], index[v]) for u, v in edges])
    keyed: dict[tuple, list[int]] = {}
    for v in range(k):
        keyed.setdefault((A[v][v], deg[live[v]]), []).append(v)
    cells = _refine(A, [keyed[key] for key in sorted(keyed)])
    best = [None]
    if k:
        _search(A, cells, best)
    body = ".".join(map(str, best[0] or ()))
    return f"{k}+{isolated}:{body}"


def canonical_form(G: Multigraph) -> str:
    """String that is equal for two multigraphs iff they are isomorphic.

    Loops and edge multiplicities are respected; isolated vertices count.
    """
    if G.vertex_count - sum(1 for d in G.degrees() if d == 0) > MAX_CANONICAL_VERTICES:
        raise SizeLimitError(f"canonical form limited to {MAX_CANONICAL_VERTICES} non-isolated vertices")
    edges = tuple(sorted((min(u, v), max(u, v)) for u, v in G.edges))
    return _canonical_code(G.vertex_count, edges)


def rooted_canonical_form(G: Multigraph, edge_id: int) -> str:
    """Canonical form of ``G`` with one distinguished (unoriented) edge.

    The root is marked by a pendant gadget that cannot occur elsewhere: a new
    vertex carrying more loops than any vertex of ``G`` attached to both ends.
    """
    u, v = G.edges[edge_id]
    rest = delete_edges(G, [edge_id])
    mark = G.vertex_count
    loops = 1 + max([0] + [sum(1 for a, b in G.edges if a == b == x) for x in range(G.vertex_count)]) + G.edge_count
    edges = list(rest.edges) + [(mark, mark)] * loops + [(u, mark), (mark, v)]
    return canonical_form(Multigraph(G.vertex_count + 1, tuple(edges)))


def are_isomorphic(G: Multigraph, H: Multigraph) -> bool:
    return G.vertex_count == H.vertex_count and canonical_form(G) == canonical_form(H)


# ---------------------------------------------------------------------------
# edge decks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Card:
    canonical: str
    graph: Multigraph
    multiplicity: int


@dataclass(frozen=True)
class EdgeDeck:
    cards: tuple[Card, ...]
    source_edge_count: int
    source_vertex_count: int

    def __post_init__(self):
        total = sum(c.multiplicity for c in self.cards)
        if total != self.source_edge_count:
            raise ValueError(f"card multiplicities sum to {total}, expected {self.source_edge_count}")
        for c in self.cards:
            if c.graph.edge_count != self.source_edge_count - 1:
                raise ValueError("card has the wrong number of edges")
            if c.graph.vertex_count != self.source_vertex_count:
                raise ValueError("card has the wrong number of vertices")

    def signature(self) -> tuple[tuple[str, int], ...]:
        return tuple((c.canonical, c.multiplicity) for c in self.cards)

    def __iter__(self):
        return iter(self.cards)


def edge_deck(G: Multigraph) -> EdgeDeck:
    if G.edge_count < 1:
        raise ValueError("edge deck needs at least one edge")
    groups: dict[str, list[Multigraph]] = {}
    for i in range(G.edge_count):
        card = delete_edges(G, [i])
        groups.setdefault(canonical_form(card), []).append(card)
    cards = tuple(
        Card(key, graphs[0], len(graphs)) for key, graphs in sorted(groups.items())
    )
    return EdgeDeck(cards, G.edge_count, G.vertex_count)


def deck_completions(deck: EdgeDeck, card: Card) -> list[tuple[int, int]]:
    """Vertex pairs (u, v) such that ``card + uv`` has exactly this edge deck.

    These are the places where the deleted edge may have been; the returned
    completions are all consistent with the deck, which is all a deck
    consumer can know.
    """
    target = deck.signature()
    C = card.graph
    n = C.vertex_count
    out = []
    for u in range(n):
        for v in range(u, n):
            H = C.add_edge(u, v)
            if edge_deck(H).signature() == target:
                out.append((u, v))
    return out


def deck_degree_sequence(deck: EdgeDeck) -> tuple[int, ...]:
    """Sorted degree sequence of the source graph, read off the cards.

    Every card, completed by one edge somewhere, must give the source degree
    multiset; candidates common to all cards survive.  When that leaves a
    choice (e.g. decks with a single class), only completions whose own deck
    equals ``deck`` are kept.
    """
    candidates = None
    for card in deck.cards:
        deg = card.graph.degrees()
        n = len(deg)
        options = set()
        for u in range(n):
            for v in range(u, n):
                d = list(deg)
                d[u] += 1
                d[v] += 1
                options.add(tuple(sorted(d)))
        candidates = options if candidates is None else candidates & options
    if not candidates:
        raise InexactDivisionError("no degree sequence is consistent with every card")
    if len(candidates) > 1:
        card = deck.cards[0]
        candidates = {
            tuple(sorted(card.graph.add_edge(u, v).degrees())) for u, v in deck_completions(deck, card)
        }
        if len(candidates) != 1:
            raise ValueError(f"degree sequence not determined by the deck: {sorted(candidates)}")
    return next(iter(candidates))


def deck_to_json(deck: EdgeDeck) -> dict:
    return {
        "edge_count": deck.source_edge_count,
        "vertex_count": deck.source_vertex_count,
        "cards": [
            {
                "canonical": c.canonical,
                "multiplicity": c.multiplicity,
                "edges": [list(e) for e in c.graph.edges],
            }
            for c in deck.cards
        ],
    }


def deck_from_json(payload: dict) -> EdgeDeck:
    """Inverse of deck_to_json; canonical forms are recomputed and checked."""
    try:
        m = int(payload["edge_count"])
        n = int(payload["vertex_count"])
        cards = []
        for item in payload["cards"]:
            G = Multigraph(n, tuple((int(u), int(v)) for u, v in item["edges"]))
            key = canonical_form(G)
            if "canonical" in item and item["canonical"] != key:
                raise GraphFormatError(f"card canonical form {item['canonical']!r} does not match its edges")
            cards.append(Card(key, G, int(item["multiplicity"])))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphFormatError):
            raise
        raise GraphFormatError(f"malformed deck: {exc}") from exc
    if len({c.canonical for c in cards}) != len(cards):
        raise GraphFormatError("deck lists the same class twice")
    cards.sort(key=lambda c: c.canonical)
    try:
        return EdgeDeck(tuple(cards), m, n)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


# ---------------------------------------------------------------------------
# subgraph counting
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _census(n: int, edges: tuple, k: int) -> Counter:
    out: Counter = Counter()
    for subset in combinations(range(len(edges)), k):
        sub = Multigraph(n, tuple(edges[i] for i in subset))
        out[canonical_form(strip_isolated(sub))] += 1
    return out


def subgraph_census(G: Multigraph, k: int) -> Counter:
    """Counter of canonical forms (isolated vertices stripped) of all k-edge subgraphs."""
    return _census(G.vertex_count, G.edges, k)


def count_subgraphs(H: Multigraph, G: Multigraph) -> int:
    """Number of edge subsets of ``G`` spanning a copy of ``H``.

    Isolated vertices of ``H`` are ignored.
    """
    k = H.edge_count
    if k > G.edge_count:
        return 0
    if k == 0:
        raise ValueError("pattern graph must have at least one edge")
    return subgraph_census(G, k)[canonical_form(strip_isolated(H))]


def kelly_count(H: Multigraph, deck: EdgeDeck) -> int:
    """S(H, G) from the cards alone (edge version of Kelly's lemma)."""
    k = H.edge_count
    m = deck.source_edge_count
    if k >= m:
        raise ValueError("Kelly counting needs |E(H)| < |E(G)|")
    total = sum(c.multiplicity * count_subgraphs(H, c.graph) for c in deck.cards)
    q, rem = divmod(total, m - k)
    if rem:
        raise InexactDivisionError(f"{total} is not divisible by {m - k}")
    return q
