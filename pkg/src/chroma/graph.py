"""Immutable simple undirected graphs with stable integer vertex ids.

Vertex ids are dense 0..n-1 at construction time.  Deleting vertices keeps
the surviving ids unchanged (tombstoning), so reduction traces stay
auditable; ``compact`` renumbers on demand.  All edit operations return new
Graph values.
"""

from __future__ import annotations

import hashlib
from typing import Iterable, Iterator

from .errors import (
    DuplicateEdge,
    IndexOutOfRange,
    MissingEdge,
    SameVertex,
    SelfLoop,
    VertexOutOfRange,
)

EdgeId = tuple[int, int]  # unordered pair stored as (min, max)


def edge_id(u: int, v: int) -> EdgeId:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph: sorted adjacency lists, no loops, no multi-edges."""

    __slots__ = ("_adj", "_sets", "_m")

    def __init__(self, adj: dict[int, tuple[int, ...]]):
        # Internal constructor; callers go through build_graph / edit ops.
        self._adj = adj
        self._sets = {v: frozenset(nbrs) for v, nbrs in adj.items()}
        self._m = sum(len(nbrs) for nbrs in adj.values()) // 2

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._adj))

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._sets[u]

    def neighbours(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self._adj[v]

    def neighbour_set(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._sets[v]

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._adj[v])

    def min_degree(self) -> int:
        return min((len(nb) for nb in self._adj.values()), default=0)

    def max_degree(self) -> int:
        return max((len(nb) for nb in self._adj.values()), default=0)

    def edges(self) -> Iterator[EdgeId]:
        for u in sorted(self._adj):
            for v in self._adj[u]:
                if u < v:
                    yield (u, v)

    def _check(self, v: int) -> None:
        if v not in self._adj:
            raise VertexOutOfRange(f"vertex {v} not in graph")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self.content_key())

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def content_key(self) -> tuple:
        return tuple(sorted((v, nbrs) for v, nbrs in self._adj.items()))

    def content_hash(self) -> str:
        payload = repr(self.content_key()).encode()
        return hashlib.sha256(payload).hexdigest()[:16]

    # -- connectivity ------------------------------------------------------

    def connected_components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps = []
        for root in sorted(self._adj):
            if root in seen:
                continue
            comp = {root}
            stack = [root]
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.connected_components()) == 1

    def bridges(self) -> list[tuple[EdgeId, bool]]:
        """All bridge edges with a flag marking proper bridges.

        An edge is a bridge iff removing it increases the component count;
        it is proper iff additionally both endpoints have degree >= 2.
        Single low-link DFS pass.
        """
        disc: dict[int, int] = {}
        low: dict[int, int] = {}
        out: list[tuple[EdgeId, bool]] = []
        timer = 0
        for root in sorted(self._adj):
            if root in disc:
                continue
            # iterative DFS: (vertex, parent, neighbour iterator)
            disc[root] = low[root] = timer
            timer += 1
            stack = [(root, -1, iter(self._adj[root]))]
            while stack:
                u, parent, it = stack[-1]
                advanced = False
                for w in it:
                    if w not in disc:
                        disc[w] = low[w] = timer
                        timer += 1
                        stack.append((w, u, iter(self._adj[w])))
                        advanced = True
                        break
                    elif w != parent:
                        low[u] = min(low[u], disc[w])
                if not advanced:
                    stack.pop()
                    if parent != -1:
                        low[parent] = min(low[parent], low[u])
                        if low[u] > disc[parent]:
                            proper = len(self._adj[u]) >= 2 and len(self._adj[parent]) >= 2
                            out.append((edge_id(parent, u), proper))
        out.sort()
        return out

    def biconnected_components(self) -> list[frozenset[int]]:
        """Block decomposition; cut vertices appear in several blocks.

        Every edge lands in exactly one block; isolated vertices form
        singleton blocks.
        """
        disc: dict[int, int] = {}
        low: dict[int, int] = {}
        timer = 0
        edge_stack: list[EdgeId] = []
        blocks: list[frozenset[int]] = []
        for root in sorted(self._adj):
            if root in disc:
                continue
            if not self._adj[root]:
                blocks.append(frozenset({root}))
                disc[root] = timer
                timer += 1
                continue
            disc[root] = low[root] = timer
            timer += 1
            stack = [(root, -1, iter(self._adj[root]))]
            while stack:
                u, parent, it = stack[-1]
                advanced = False
                for w in it:
                    if w not in disc:
                        edge_stack.append((u, w))
                        disc[w] = low[w] = timer
                        timer += 1
                        stack.append((w, u, iter(self._adj[w])))
                        advanced = True
                        break
                    elif w != parent and disc[w] < disc[u]:
                        edge_stack.append((u, w))
                        low[u] = min(low[u], disc[w])
                if not advanced:
                    stack.pop()
                    if parent != -1:
                        low[parent] = min(low[parent], low[u])
                        if low[u] >= disc[parent]:
                            verts: set[int] = set()
                            while edge_stack:
                                a, b = edge_stack.pop()
                                verts.add(a)
                                verts.add(b)
                                if (a, b) == (parent, u):
                                    break
                            blocks.append(frozenset(verts))
        return sorted(blocks, key=lambda b: sorted(b))

    # -- edit operations (all return new graphs) ---------------------------

    def with_edge(self, u: int, v: int) -> Graph:
        self._check(u)
        self._check(v)
        if u == v:
            raise SelfLoop(f"cannot add loop at {u}")
        if self.has_edge(u, v):
            raise DuplicateEdge(f"edge {u}-{v} already present")
        adj = dict(self._adj)
        adj[u] = tuple(sorted(adj[u] + (v,)))
        adj[v] = tuple(sorted(adj[v] + (u,)))
        return Graph(adj)

    def without_edges(self, edges: Iterable[EdgeId]) -> Graph:
        drop = {edge_id(u, v) for u, v in edges}
        for u, v in drop:
            if not self.has_edge(u, v):
                raise MissingEdge(f"edge {u}-{v} not in graph")
        adj = {
            v: tuple(w for w in nbrs if edge_id(v, w) not in drop)
            for v, nbrs in self._adj.items()
        }
        return Graph(adj)

    def without_vertices(self, vs: Iterable[int]) -> Graph:
        gone = set(vs)
        for v in gone:
            self._check(v)
        adj = {
            v: tuple(w for w in nbrs if w not in gone)
            for v, nbrs in self._adj.items()
            if v not in gone
        }
        return Graph(adj)

    def induced(self, vs: Iterable[int]) -> Graph:
        keep = set(vs)
        for v in keep:
            self._check(v)
        adj = {v: tuple(w for w in self._adj[v] if w in keep) for v in keep}
        return Graph(adj)

    def add_vertex(self, nbrs: Iterable[int]) -> tuple[Graph, int]:
        """New vertex with the given (existing) neighbours; returns (graph, id)."""
        w = max(self._adj, default=-1) + 1
        nb = sorted(set(nbrs))
        for x in nb:
            self._check(x)
        adj = dict(self._adj)
        adj[w] = tuple(nb)
        for x in nb:
            adj[x] = tuple(sorted(adj[x] + (w,)))
        return Graph(adj), w

    def merge_vertices(self, u: int, v: int) -> tuple[Graph, int]:
        """Replace u and v by a fresh vertex adjacent to N(u) | N(v) minus {u,v}.

        Adjacency of u and v is not required; reductions merge non-adjacent
        pairs.
        """
        self._check(u)
        self._check(v)
        if u == v:
            raise SameVertex(f"cannot merge {u} with itself")
        new_nbrs = (self._sets[u] | self._sets[v]) - {u, v}
        g = self.without_vertices([u, v])
        return g.add_vertex(new_nbrs)

    def subdivide_edge(self, e: EdgeId, t: int) -> Graph:
        """Replace edge e by a path of t+1 edges through t fresh vertices."""
        u, v = e
        if not self.has_edge(u, v):
            raise MissingEdge(f"edge {u}-{v} not in graph")
        if t == 0:
            return self
        g = self.without_edges([(u, v)])
        prev = u
        for _ in range(t):
            g, w = g.add_vertex([prev])
            prev = w
        return g.with_edge(prev, v)

    def compact(self) -> tuple[Graph, dict[int, int]]:
        """Renumber vertices to 0..n-1; returns (graph, old->new map)."""
        mapping = {v: i for i, v in enumerate(sorted(self._adj))}
        adj = {
            mapping[v]: tuple(sorted(mapping[w] for w in nbrs))
            for v, nbrs in self._adj.items()
        }
        return Graph(adj), mapping


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Canonical graph on vertex ids 0..n-1 from an edge list.

    Rejects out-of-range endpoints, self-loops and duplicate pairs.
    """
    if n < 0:
        raise VertexOutOfRange("vertex count must be non-negative")
    adj: dict[int, list[int]] = {v: [] for v in range(n)}
    seen: set[EdgeId] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        e = edge_id(u, v)
        if e in seen:
            raise DuplicateEdge(f"duplicate edge {e}")
        seen.add(e)
        adj[u].append(v)
        adj[v].append(u)
    return Graph({v: tuple(sorted(nbrs)) for v, nbrs in adj.items()})


class SignedPath:
    """A vertex sequence with the 1-based signed indexing slice convention.

    For a path on vertices p_1..p_n, index -i means p_{n+i+1} (so -1 is the
    last vertex).  ``slice(i, j)`` normalizes both indices and always returns
    the ascending-index subpath, matching the convention that a slice with
    i' > j' denotes the same subpath read from the smaller index.
    """

    __slots__ = ("vertices", "induced")

    def __init__(self, vertices: Iterable[int], induced: bool = False):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise IndexOutOfRange("path vertices must be pairwise distinct")
        self.induced = induced

    @classmethod
    def in_graph(cls, g: Graph, vertices: Iterable[int]) -> "SignedPath":
        """Build a path and verify consecutive adjacency; flags inducedness."""
        vs = tuple(vertices)
        for a, b in zip(vs, vs[1:]):
            if not g.has_edge(a, b):
                raise MissingEdge(f"consecutive vertices {a},{b} not adjacent")
        induced = all(
            not g.has_edge(vs[i], vs[j])
            for i in range(len(vs))
            for j in range(i + 2, len(vs))
        )
        return cls(vs, induced=induced)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def length(self) -> int:
        """Number of edges; 0 for the empty and single-vertex paths."""
        return max(0, len(self.vertices) - 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SignedPath) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"SignedPath{self.vertices}"

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def _normalize(self, i: int) -> int:
        n = self.n
        if i == 0 or abs(i) > n:
            raise IndexOutOfRange(f"index {i} invalid for path on {n} vertices")
        return i if i >= 1 else n + i + 1

    def at(self, i: int) -> int:
        """Vertex at signed 1-based index i."""
        return self.vertices[self._normalize(i) - 1]

    def position(self, v: int) -> int:
        """1-based index of vertex v."""
        try:
            return self.vertices.index(v) + 1
        except ValueError:
            raise IndexOutOfRange(f"vertex {v} not on path") from None

    def dist(self, u: int, v: int) -> int:
        """Distance along the path between two of its vertices."""
        return abs(self.position(u) - self.position(v))

    def slice(self, i: int, j: int) -> "SignedPath":
        a, b = self._normalize(i), self._normalize(j)
        if a > b:
            a, b = b, a
        return SignedPath(self.vertices[a - 1 : b], induced=self.induced)

    def slice_vertices(self, u: int, v: int) -> "SignedPath":
        return self.slice(self.position(u), self.position(v))

    def prefix(self, i: int) -> "SignedPath":
        """P[:i] -- the slice from the first vertex to index i."""
        return self.slice(1, i)

    def suffix(self, i: int) -> "SignedPath":
        """P[i:] -- the slice from index i to the last vertex."""
        return self.slice(i, -1)

    def prefix_vertex(self, u: int) -> "SignedPath":
        return self.slice_vertices(self.vertices[0], u)

    def suffix_vertex(self, u: int) -> "SignedPath":
        return self.slice_vertices(u, self.vertices[-1])

    def reversed(self) -> "SignedPath":
        return SignedPath(tuple(reversed(self.vertices)), induced=self.induced)
