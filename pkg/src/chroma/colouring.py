"""Colouring engines: brute-force decision, constructive maximum-degree
colouring, and list-colouring / precolouring extension down an elimination
forest.

Colourings are plain dicts vertex -> colour in {1..r}; ListAssignments are
dicts vertex -> frozenset of allowed colours.
"""

from __future__ import annotations

from typing import Optional

from .errors import FixedOutOfRange, InvalidForest, InvalidParams, NotConnected
from .graph import Graph
from .treedepth import EliminationForest, validate_elimination_forest

Colouring = dict[int, int]
ListAssignment = dict[int, frozenset[int]]


def is_proper_colouring(g: Graph, col: Colouring, r: Optional[int] = None) -> bool:
    """Independent edge-scan check: total, in range, no monochromatic edge."""
    if set(col) != set(g.vertices()):
        return False
    if r is not None and any(not (1 <= c <= r) for c in col.values()):
        return False
    return all(col[u] != col[v] for u, v in g.edges())


def greedy_clique(g: Graph) -> list[int]:
    """Maximal clique grown from the highest-degree vertex (lower-bound aid)."""
    if g.n == 0:
        return []
    start = max(g.vertices(), key=lambda v: (g.degree(v), -v))
    clique = [start]
    common = set(g.neighbour_set(start))
    while common:
        v = max(common, key=lambda x: (len(g.neighbour_set(x) & common), -x))
        clique.append(v)
        common &= g.neighbour_set(v)
    return clique


def brute_force_decide(g: Graph, r: int) -> Optional[Colouring]:
    """Complete backtracking oracle with clique-seeded symmetry breaking."""
    if r < 0:
        raise InvalidParams("r must be >= 0")
    verts = g.vertices()
    if not verts:
        return {}
    if r == 0:
        return None
    clique = greedy_clique(g)
    if len(clique) > r:
        return None
    rest = sorted(set(verts) - set(clique), key=lambda v: (-g.degree(v), v))
    order = clique + rest
    pos = {v: i for i, v in enumerate(order)}
    nbrs_before = [
        [pos[w] for w in g.neighbours(v) if pos[w] < i] for i, v in enumerate(order)
    ]
    colours = [0] * len(order)

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        forbidden = {colours[j] for j in nbrs_before[i]}
        top = min(r, used + 1)
        for c in range(1, top + 1):
            if c in forbidden:
                continue
            colours[i] = c
            if place(i + 1, max(used, c)):
                return True
        colours[i] = 0
        return False

    if not place(0, 0):
        return None
    return {order[i]: colours[i] for i in range(len(order))}


# ---------------------------------------------------------------------------
# Constructive maximum-degree colouring
# ---------------------------------------------------------------------------


def _is_complete(g: Graph) -> bool:
    n = g.n
    return g.m == n * (n - 1) // 2


def _is_cycle(g: Graph) -> bool:
    return g.n >= 3 and all(g.degree(v) == 2 for v in g.vertices())


def _bfs_order(g: Graph, root: int) -> list[int]:
    order = []
    seen = {root}
    queue = [root]
    while queue:
        nxt = []
        for u in queue:
            order.append(u)
            for w in g.neighbours(u):
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        queue = nxt
    return order


def _greedy_reverse_bfs(
    g: Graph, order_graph: Graph, root: int, limit: int,
    pre: Optional[Colouring] = None,
) -> Colouring:
    """Colour in decreasing BFS-distance order from root, root last.

    The BFS order comes from order_graph (possibly a subgraph); adjacency
    checks use g, so preseeded colours outside order_graph still constrain.
    Every non-root vertex has an uncoloured neighbour (its BFS parent) at
    its turn, so `limit` colours suffice whenever deg(root) < limit or two
    of root's neighbours share a colour.
    """
    col: Colouring = dict(pre or {})
    for v in reversed(_bfs_order(order_graph, root)):
        taken = {col[w] for w in g.neighbours(v) if w in col}
        free = next((c for c in range(1, limit + 1) if c not in taken), None)
        if free is None:
            raise InvalidParams("greedy step exceeded the colour budget (bug)")
        col[v] = free
    return col


def brooks_colour(g: Graph) -> Colouring:
    """Proper colouring with max(deg, 1) colours unless the graph is complete
    or an odd cycle, which take one more.  Constructive case split."""
    if not g.is_connected():
        raise NotConnected("brooks_colour needs a connected graph")
    verts = g.vertices()
    if g.n == 1:
        return {verts[0]: 1}
    delta = g.max_degree()
    if _is_complete(g):
        return {v: i + 1 for i, v in enumerate(verts)}
    if _is_cycle(g):
        walk = [verts[0]]
        prev = None
        while len(walk) < g.n:
            nxt = min(w for w in g.neighbours(walk[-1]) if w != prev)
            prev = walk[-1]
            walk.append(nxt)
        col = {v: 1 + (i % 2) for i, v in enumerate(walk)}
        if g.n % 2 == 1:
            col[walk[-1]] = 3
        return col
    low = [v for v in verts if g.degree(v) < delta]
    if low:
        return _greedy_reverse_bfs(g, g, low[0], delta)
    # delta-regular; split at a cut vertex if one exists
    cut = _first_cut_vertex(g)
    if cut is not None:
        col: Colouring = {cut: 1}
        for comp in g.without_vertices([cut]).connected_components():
            block = g.induced(set(comp) | {cut})
            part = brooks_colour(block)
            swap = part[cut]
            relabel = {swap: 1, 1: swap}
            for v, c in part.items():
                col[v] = relabel.get(c, c)
        return col
    # 2-connected delta-regular, delta >= 3: find v with two non-adjacent
    # neighbours a, b whose joint removal keeps the graph connected
    for v in verts:
        nbrs = g.neighbours(v)
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                a, b = nbrs[i], nbrs[j]
                if g.has_edge(a, b):
                    continue
                rest = g.without_vertices([a, b])
                if rest.is_connected():
                    pre = {a: 1, b: 1}
                    return _greedy_reverse_bfs(g, rest, v, delta, pre=pre)
    raise InvalidParams("unreachable: regular 2-connected non-complete case")


def _first_cut_vertex(g: Graph) -> Optional[int]:
    counts: dict[int, int] = {}
    for block in g.biconnected_components():
        for v in block:
            counts[v] = counts.get(v, 0) + 1
    cuts = sorted(v for v, c in counts.items() if c >= 2)
    return cuts[0] if cuts else None


def colours_used(col: Colouring) -> int:
    return len(set(col.values()))


# ---------------------------------------------------------------------------
# Elimination-forest DP
# ---------------------------------------------------------------------------


def list_colour_bounded_td(
    g: Graph, forest: EliminationForest, lists: ListAssignment
) -> Optional[Colouring]:
    """Complete list-colouring decision down the forest.

    Since every edge joins an ancestor-descendant pair, properness is
    checkable against coloured ancestors alone; children subtrees are
    independent once the chain above them is fixed.  Cost O(n * r^height).
    """
    if not validate_elimination_forest(g, forest):
        raise InvalidForest("forest does not certify this graph")
    if set(lists) != set(g.vertices()) or any(not s for s in lists.values()):
        raise InvalidParams("lists must be nonempty and cover every vertex")
    children = forest.children()
    assigned: Colouring = {}

    def solve_subtree(v: int) -> bool:
        taken = {assigned[w] for w in g.neighbours(v) if w in assigned}
        for c in sorted(lists[v]):
            if c in taken:
                continue
            assigned[v] = c
            if all(solve_subtree(ch) for ch in children[v]):
                return True
            _clear_subtree(v)
            del assigned[v]
        return False

    def _clear_subtree(v: int) -> None:
        for ch in children[v]:
            if ch in assigned:
                _clear_subtree(ch)
                del assigned[ch]

    for root in forest.roots:
        if not solve_subtree(root):
            return None
    return dict(assigned)


def precolouring_extension(
    g: Graph, forest: EliminationForest, fixed: Colouring, r: int
) -> Optional[Colouring]:
    """Singleton lists on fixed vertices, full {1..r} elsewhere."""
    if r < 1:
        raise InvalidParams("r must be >= 1")
    full = frozenset(range(1, r + 1))
    for v, c in fixed.items():
        if v not in g:
            raise FixedOutOfRange(f"fixed vertex {v} not in graph")
        if not 1 <= c <= r:
            raise FixedOutOfRange(f"fixed colour {c} outside 1..{r}")
    lists = {
        v: (frozenset({fixed[v]}) if v in fixed else full) for v in g.vertices()
    }
    return list_colour_bounded_td(g, forest, lists)


# ---------------------------------------------------------------------------
# Tiny-range direct decisions
# ---------------------------------------------------------------------------


def decide_small_r(g: Graph, r: int) -> Optional[Colouring]:
    """Direct decision for r <= 2 (trivial ranges and bipartiteness)."""
    if r < 0:
        raise InvalidParams("r must be >= 0")
    if r == 0:
        return {} if g.n == 0 else None
    if r == 1:
        return {v: 1 for v in g.vertices()} if g.m == 0 else None
    col: Colouring = {}
    for root in g.vertices():
        if root in col:
            continue
        col[root] = 1
        queue = [root]
        while queue:
            u = queue.pop()
            for w in g.neighbours(u):
                if w not in col:
                    col[w] = 3 - col[u]
                    queue.append(w)
                elif col[w] == col[u]:
                    return None
    return col
