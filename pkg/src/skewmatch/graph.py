"""Simple undirected graphs, matchings and the combinatorial certificates built on them.

Vertices are the integers ``1..n``. Edges are stored as sorted pairs ``(u, v)``
with ``u < v``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import DomainError, ParseError

Edge = tuple[int, int]

TUTTE_MAX_N = 20


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``1..n``.

    Equality is by ``(n, edges)``: isolated vertices count.
    """

    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"vertex count must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        normed = set()
        for e in self.edges:
            u, v = (int(a) for a in e)
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise DomainError(f"edge {{{u},{v}}} has an endpoint outside 1..{self.n}")
            normed.add(_norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(normed))

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], n: int | None = None) -> Graph:
        edges = [tuple(e) for e in edges]
        if n is None:
            n = max((max(e) for e in edges), default=1)
        return cls(n, frozenset(edges))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """``adjacency[v]`` is the sorted neighbor tuple of ``v`` (index 0 unused)."""
        nbrs: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def is_connected(self) -> bool:
        return len(connected_components(self)) == 1

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1 and self.is_connected()

    def to_edge_list(self) -> str:
        lines = [f"n {self.n}"] + [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def parse_graph(text: str) -> Graph:
    """Parse edge-list text: optional ``n <count>`` header, ``u v`` lines, ``#`` comments."""
    header_n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if len(parts) != 2 or header_n is not None or edges:
                raise ParseError(f"bad header {raw.strip()!r}", lineno)
            try:
                header_n = int(parts[1])
            except ValueError:
                raise ParseError(f"bad vertex count {parts[1]!r}", lineno) from None
            if header_n < 1:
                raise ParseError("vertex count must be positive", lineno)
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {raw.strip()!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {raw.strip()!r}", lineno) from None
        if u < 1 or v < 1:
            raise ParseError(f"vertices are 1-based, got {raw.strip()!r}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        edges.append(_norm_edge(u, v))
    max_end = max((v for _, v in edges), default=0)
    if header_n is None:
        if not edges:
            raise ParseError("empty graph needs an 'n <count>' header")
        n = max_end
    else:
        if header_n < max_end:
            raise ParseError(f"header n={header_n} is below max endpoint {max_end}")
        n = header_n
    return Graph(n, frozenset(edges))


def _components(G: Graph, removed: frozenset[int] | set[int] = frozenset()) -> list[list[int]]:
    seen = set(removed)
    comps = []
    adj = G.adjacency
    for s in G.vertices:
        if s in seen:
            continue
        seen.add(s)
        stack = [s]
        comp = [s]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    comp.append(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def connected_components(G: Graph) -> list[list[int]]:
    """Maximal connected vertex sets, each sorted, ordered by least vertex."""
    return _components(G)


def odd_components_after_deletion(G: Graph, S: Iterable[int]) -> int:
    S = set(S)
    bad = [v for v in S if not 1 <= v <= G.n]
    if bad:
        raise DomainError(f"vertices {sorted(bad)} outside 1..{G.n}")
    return sum(len(c) % 2 for c in _components(G, S))


def tutte_has_perfect_matching(G: Graph) -> tuple[bool, list[int] | None]:
    """Decide perfect-matching existence by scanning every vertex subset.

    Returns ``(True, None)`` or ``(False, S)`` where ``G - S`` has more than
    ``|S|`` odd components. Exponential; refuses ``n > 20``.
    """
    if G.n > TUTTE_MAX_N:
        raise DomainError(f"Tutte scan is limited to n <= {TUTTE_MAX_N}, got n={G.n}")
    for size in range(G.n + 1):
        for S in itertools.combinations(G.vertices, size):
            if odd_components_after_deletion(G, S) > size:
                return False, list(S)
    return True, None


@dataclass(frozen=True)
class Matching:
    """A set of vertex-disjoint edges of ``graph``."""

    graph: Graph
    edges: frozenset[Edge]

    def __post_init__(self):
        normed = frozenset(_norm_edge(int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", normed)
        covered: set[int] = set()
        for u, v in normed:
            if not self.graph.has_edge(u, v):
                raise DomainError(f"{{{u},{v}}} is not an edge of the graph")
            if u in covered or v in covered:
                raise DomainError(f"matching edges share a vertex at {{{u},{v}}}")
            covered.update((u, v))

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.sorted_edges())

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    @property
    def covered(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def to_json(self) -> list[list[int]]:
        return [list(e) for e in self.sorted_edges()]


def maximum_matching(G: Graph) -> Matching:
    """Maximum-cardinality matching via Edmonds' blossom algorithm.

    Exposed roots are tried in ascending order and neighbors are scanned in
    ascending order, so the result is canonical for a given graph.
    """
    n = G.n
    adj = [[u - 1 for u in G.adjacency[v]] for v in range(1, n + 1)]
    match = [-1] * n
    for root in range(n):
        if match[root] != -1:
            continue
        end, parent = _augmenting_path(root, adj, match)
        while end != -1:
            pv = parent[end]
            nxt = match[pv]
            match[end] = pv
            match[pv] = end
            end = nxt
    edges = frozenset((v + 1, match[v] + 1) for v in range(n) if match[v] > v)
    return Matching(G, edges)


def _augmenting_path(root: int, adj: list[list[int]], match: list[int]) -> tuple[int, list[int]]:
    # BFS over alternating trees; blossoms are contracted by redirecting `base`.
    n = len(adj)
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]):
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    used[root] = True
    queue = [root]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    return to, parent
                used[match[to]] = True
                queue.append(match[to])
    return -1, parent


def brute_force_matching_number(G: Graph) -> int:
    """Exact matching number by exhaustive branching (test oracle, n <= ~14).

    The lowest available vertex is either left unmatched or paired with one of
    its available neighbors; states are memoized on the available-vertex mask.
    """
    nbr_mask = [0] * G.n
    for u, v in G.edges:
        nbr_mask[u - 1] |= 1 << (v - 1)
        nbr_mask[v - 1] |= 1 << (u - 1)

    @lru_cache(maxsize=None)
    def best(avail: int) -> int:
        # drop vertices with no available neighbor; they cannot be matched
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            if nbr_mask[v] & avail:
                break
            avail ^= low
        if not avail:
            return 0
        low = avail & -avail
        v = low.bit_length() - 1
        rest = avail ^ low
        result = best(rest)
        cand = nbr_mask[v] & rest
        while cand:
            bit = cand & -cand
            cand ^= bit
            result = max(result, 1 + best(rest ^ bit))
        return result

    return best((1 << G.n) - 1)


def _first_cycle(n: int, adj: list[set[int]]) -> list[Edge] | None:
    # iterative DFS in ascending vertex order; first back edge closes the cycle
    parent = [0] * (n + 1)
    state = [0] * (n + 1)  # 0 new, 1 on stack, 2 done
    for s in range(1, n + 1):
        if state[s]:
            continue
        state[s] = 1
        stack = [(s, iter(sorted(adj[s])))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for u in it:
                if u == parent[v]:
                    continue
                if state[u] == 1:
                    cycle = [_norm_edge(v, u)]
                    w = v
                    while w != u:
                        cycle.append(_norm_edge(w, parent[w]))
                        w = parent[w]
                    return cycle
                if state[u] == 0:
                    state[u] = 1
                    parent[u] = v
                    stack.append((u, iter(sorted(adj[u]))))
                    advanced = True
                    break
            if not advanced:
                state[v] = 2
                stack.pop()
    return None


def spanning_tree_containing(G: Graph, M: Matching) -> Graph:
    """Spanning tree of connected ``G`` whose edges include every edge of ``M``.

    Repeatedly finds a cycle and deletes its smallest non-matching edge.
    """
    if M.graph != G:
        Matching(G, M.edges)  # raises if M is not a matching of G
    if not G.is_connected():
        raise DomainError("graph is disconnected; no spanning tree exists")
    adj = [set(a) for a in G.adjacency]
    edges = set(G.edges)
    keep = M.edges
    while len(edges) > G.n - 1:
        cycle = _first_cycle(G.n, adj)
        u, v = min(e for e in cycle if e not in keep)
        edges.discard((u, v))
        adj[u].discard(v)
        adj[v].discard(u)
    return Graph(G.n, frozenset(edges))


@dataclass(frozen=True)
class VertexRelabeling:
    """Permutation moving the j-th matching edge onto ``{2j-1, 2j}``.

    ``perm[v - 1]`` is the new label of original vertex ``v``.
    """

    perm: tuple[int, ...]
    image_matching: Matching

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise DomainError("perm is not a permutation of 1..n")

    @property
    def n(self) -> int:
        return len(self.perm)

    def __call__(self, v: int) -> int:
        return self.perm[v - 1]

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for old, new in enumerate(self.perm, start=1):
            inv[new - 1] = old
        return tuple(inv)

    def apply_graph(self, G: Graph) -> Graph:
        return Graph(G.n, frozenset(_norm_edge(self(u), self(v)) for u, v in G.edges))

    def restore_graph(self, H: Graph) -> Graph:
        inv = self.inverse
        return Graph(H.n, frozenset(_norm_edge(inv[u - 1], inv[v - 1]) for u, v in H.edges))

    def index_array(self) -> np.ndarray:
        """0-based positions: ``A_original = A_relabeled[np.ix_(idx, idx)]``."""
        return np.asarray(self.perm, dtype=int) - 1


def relabel_for_matching(G: Graph, M: Matching) -> VertexRelabeling:
    if M.graph != G:
        M = Matching(G, M.edges)
    perm = [0] * G.n
    nxt = 1
    for u, v in M.sorted_edges():
        perm[u - 1], perm[v - 1] = nxt, nxt + 1
        nxt += 2
    for v in G.vertices:
        if perm[v - 1] == 0:
            perm[v - 1] = nxt
            nxt += 1
    image_graph = Graph(G.n, frozenset(_norm_edge(perm[u - 1], perm[v - 1]) for u, v in G.edges))
    image = Matching(image_graph, frozenset((2 * j - 1, 2 * j) for j in range(1, len(M) + 1)))
    return VertexRelabeling(tuple(perm), image)


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi G(n, p)."""
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph(n, frozenset(zip((iu[keep] + 1).tolist(), (ju[keep] + 1).tolist())))


def random_connected_graph(n: int, p: float, rng: np.random.Generator, max_tries: int = 10_000) -> Graph:
    """G(n, p) conditioned on connectivity, by rejection."""
    for _ in range(max_tries):
        G = random_graph(n, p, rng)
        if G.is_connected():
            return G
    raise DomainError(f"no connected G({n}, {p}) sample in {max_tries} tries")
