"""Structural detectors around a host path: jumps, maximal jump chains, and
the odd/even path assembly; plus detectors for bounded-treedepth subgraphs
whose whole outside neighbourhood is a one- or two-vertex witness set
(ttype), optionally with a long induced path between the witnesses (ltype).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .errors import AssemblyFailed, InvalidParams
from .graph import Graph, SignedPath
from .treedepth import induced_path_between, treedepth_exact, TreedepthValue

POSITIVE = 1
NEGATIVE = -1


class JumpContext:
    """Deterministic jump store for one (graph, path) pair.

    A jump between a and b is an a-b path edge-disjoint from the host path
    and internally vertex-disjoint from it.  The first jump found under a
    fixed search order (shortest, ascending tie-break) is cached per
    unordered pair, realizing the fix-one-jump convention reproducibly.
    """

    def __init__(self, g: Graph, path: SignedPath):
        self.g = g
        self.path = path
        self._pos = {v: i + 1 for i, v in enumerate(path.vertices)}
        self._on_path = frozenset(path.vertices)
        self._path_edges = frozenset(
            (min(a, b), max(a, b)) for a, b in zip(path.vertices, path.vertices[1:])
        )
        self._cache: dict[tuple[int, int], Optional[tuple[int, ...]]] = {}

    def position(self, v: int) -> int:
        return self._pos[v]

    def jump(self, a: int, b: int) -> Optional[SignedPath]:
        """The fixed jump between a and b, oriented from a to b, or None."""
        if a not in self._pos or b not in self._pos or a == b:
            raise InvalidParams("jump endpoints must be distinct path vertices")
        key = (min(a, b), max(a, b))
        if key not in self._cache:
            self._cache[key] = self._search(*key)
        stored = self._cache[key]
        if stored is None:
            return None
        verts = stored if stored[0] == a else tuple(reversed(stored))
        return SignedPath(verts)

    def has_jump(self, a: int, b: int) -> bool:
        return self.jump(a, b) is not None

    def _search(self, a: int, b: int) -> Optional[tuple[int, ...]]:
        # BFS from a to b avoiding path internals and path edges
        allowed = lambda v: v == a or v == b or v not in self._on_path
        parent = {a: None}
        queue = [a]
        while queue:
            nxt = []
            for u in queue:
                for w in self.g.neighbours(u):
                    if (min(u, w), max(u, w)) in self._path_edges:
                        continue
                    if w in parent or not allowed(w):
                        continue
                    parent[w] = u
                    if w == b:
                        out = [b]
                        while out[-1] != a:
                            out.append(parent[out[-1]])
                        return tuple(reversed(out))
                    nxt.append(w)
            queue = nxt
        return None

    # -- jumps out of an interval -----------------------------------------

    def jumps_out_of(self, u: int, v: int, sign: int) -> list[tuple[int, int]]:
        """All endpoint pairs (a, b) of jumps out of the interval (u, v):
        a strictly inside the interval, b outside on the positive
        (beyond v) or negative (before u) side."""
        pu, pv = sorted((self._pos[u], self._pos[v]))
        n = self.path.n
        inside = [self.path.at(i) for i in range(pu + 1, pv)]
        if sign == POSITIVE:
            outside = [self.path.at(i) for i in range(pv + 1, n + 1)]
        elif sign == NEGATIVE:
            outside = [self.path.at(i) for i in range(1, pu)]
        else:
            raise InvalidParams("sign must be +1 or -1")
        return sorted(
            (a, b) for a in inside for b in outside if self.has_jump(a, b)
        )

    def max_jump_out(self, u: int, v: int, sign: int) -> Optional[tuple[int, int]]:
        """Endpoints of the maximum jump out of (u, v): the outside endpoint
        b maximizes its path distance from the interval, then a minimizes
        the path distance to b."""
        pu, pv = sorted((self._pos[u], self._pos[v]))
        n = self.path.n
        inside_positions = range(pv - 1, pu, -1)  # nearest the far side first
        if sign == POSITIVE:
            b_positions = range(n, pv, -1)
            a_order = inside_positions
        elif sign == NEGATIVE:
            b_positions = range(1, pu)
            a_order = range(pu + 1, pv)  # nearest u first
        else:
            raise InvalidParams("sign must be +1 or -1")
        for pb in b_positions:
            b = self.path.at(pb)
            for pa in a_order:
                a = self.path.at(pa)
                if self.has_jump(a, b):
                    return a, b
        return None


@dataclass(frozen=True)
class ChainExtension:
    """Maximal sequence of maximum jumps out of a growing interval.

    Positive chains keep the left base endpoint fixed and extend right;
    negative chains keep the right endpoint fixed and extend left.  The
    stored jump paths are the context's fixed jumps, oriented x -> y.
    """

    base: tuple[int, int]
    sign: int
    jumps: tuple[tuple[int, int], ...]
    jump_paths: tuple[SignedPath, ...] = field(hash=False)

    def __len__(self) -> int:
        return len(self.jumps)

    def at(self, i: int) -> tuple[int, int]:
        """Signed 1-based indexing into the jump sequence (-1 = last)."""
        if i == 0 or abs(i) > len(self.jumps):
            raise InvalidParams(f"jump index {i} out of range")
        return self.jumps[i - 1 if i > 0 else len(self.jumps) + i]


def find_jump(g: Graph, path: SignedPath, a: int, b: int) -> Optional[SignedPath]:
    return JumpContext(g, path).jump(a, b)


def max_jump_out(
    g: Graph, path: SignedPath, u: int, v: int, sign: int
) -> Optional[tuple[int, int]]:
    return JumpContext(g, path).max_jump_out(u, v, sign)


def chain_extension(
    ctx: JumpContext, u: int, v: int, sign: int
) -> ChainExtension:
    """Iterate maximum jumps out of the interval until none exists."""
    pu, pv = ctx.position(u), ctx.position(v)
    if pu > pv:
        u, v = v, u
    jumps: list[tuple[int, int]] = []
    paths: list[SignedPath] = []
    left, right = u, v
    while True:
        got = ctx.max_jump_out(left, right, sign)
        if got is None:
            break
        x, y = got
        jumps.append((x, y))
        paths.append(ctx.jump(x, y))
        if sign == POSITIVE:
            right = y
        else:
            left = y
    return ChainExtension((u, v), sign, tuple(jumps), tuple(paths))


def _assemble(ctx: JumpContext, jumps, paths) -> SignedPath:
    """Glue jumps with the path segments between consecutive y_{i-1}, x_i."""
    if not jumps:
        return SignedPath(())
    verts: list[int] = list(paths[0].vertices)
    for (px, py), (x, y), jp in zip(jumps, jumps[1:], paths[1:]):
        seg = ctx.path.slice_vertices(py, x)
        ordered = seg.vertices if seg.vertices[0] == py else tuple(reversed(seg.vertices))
        verts.extend(ordered[1:])
        if verts[-1] != x:
            raise AssemblyFailed("jump does not continue the bridged segment")
        verts.extend(jp.vertices[1:])
    if len(set(verts)) != len(verts):
        raise AssemblyFailed("assembled vertices repeat; not a path")
    try:
        return SignedPath.in_graph(ctx.g, verts)
    except Exception as exc:  # adjacency break
        raise AssemblyFailed(str(exc)) from exc


def odd_even_paths(ctx: JumpContext, chain: ChainExtension) -> tuple[SignedPath, SignedPath]:
    """Paths assembled from the odd- and even-indexed jump subsequences.

    For chains of length >= 2 the two paths are guaranteed vertex-disjoint;
    a violation signals an implementation bug and raises AssemblyFailed.
    """
    if len(chain) < 1:
        raise InvalidParams("chain extension must have at least one jump")
    odd = _assemble(ctx, chain.jumps[0::2], chain.jump_paths[0::2])
    even = _assemble(ctx, chain.jumps[1::2], chain.jump_paths[1::2])
    if len(chain) >= 2 and set(odd.vertices) & set(even.vertices):
        raise AssemblyFailed("odd and even paths intersect")
    return odd, even


# ---------------------------------------------------------------------------
# ttype / ltype detectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TTypeReport:
    vertices: frozenset[int]
    witnesses: frozenset[int]
    bound: int
    certified_td: int
    minimal: bool = True

    def to_record(self) -> dict:
        return {
            "kind": "ttype",
            "vertices": sorted(self.vertices),
            "witnesses": sorted(self.witnesses),
            "bound": self.bound,
            "certified_td": self.certified_td,
            "minimal": self.minimal,
        }


@dataclass(frozen=True)
class LTypeReport:
    vertices: frozenset[int]
    witnesses: frozenset[int]
    bound: int
    certified_td: int
    length_bound: int
    witness_path: SignedPath
    minimal: bool = True

    def to_record(self) -> dict:
        return {
            "kind": "ltype",
            "vertices": sorted(self.vertices),
            "witnesses": sorted(self.witnesses),
            "bound": self.bound,
            "certified_td": self.certified_td,
            "length_bound": self.length_bound,
            "witness_path": list(self.witness_path.vertices),
            "minimal": self.minimal,
        }


def _component_fits(g: Graph, comp: frozenset[int], c: int) -> bool:
    if len(comp) <= c:  # treedepth never exceeds the vertex count
        return True
    return isinstance(treedepth_exact(g.induced(comp), cap=c), TreedepthValue)


def _witness_candidates(g: Graph, s_set: tuple[int, ...], c: int):
    """Components of G - S attached only inside S and of treedepth <= c."""
    rest = g.without_vertices(s_set)
    s = set(s_set)
    out = []
    for comp in rest.connected_components():
        outside = set()
        for v in comp:
            outside |= g.neighbour_set(v)
        outside -= comp
        if outside and outside <= s and _component_fits(g, comp, c):
            out.append((comp, frozenset(outside)))
    out.sort(key=lambda pair: sorted(pair[0]))
    return out


def _valid_union(g: Graph, s_set: tuple[int, ...], combo) -> bool:
    union: set[int] = set()
    attached: set[int] = set()
    for comp, att in combo:
        union |= comp
        attached |= att
    if attached != set(s_set):
        return False
    closure = union | set(s_set)
    return all(
        len(g.neighbour_set(s) & closure) >= 2 for s in s_set
    )


def _certify(g: Graph, union: frozenset[int], c: int) -> int:
    res = treedepth_exact(g.induced(union), cap=max(c, 1))
    assert isinstance(res, TreedepthValue)
    return res.value


def find_minimal_ttype(g: Graph, c: int) -> Optional[TTypeReport]:
    """First (witness-lexicographic, fewest-components) bounded-treedepth
    subgraph whose entire outside neighbourhood is a witness set of one or
    two vertices, each with two neighbours in the closure.

    Any such subgraph is a union of components of G - S, and a minimal one
    uses at most three of them, so searching unions of up to three
    components per witness set is complete.  Witness sets of size zero are
    rejected as degenerate.
    """
    if c < 1:
        raise InvalidParams("treedepth bound must be >= 1")
    verts = g.vertices()
    singles = [(v,) for v in verts]
    pairs = [(u, v) for i, u in enumerate(verts) for v in verts[i + 1 :]]
    for s_set in singles + pairs:
        cands = _witness_candidates(g, s_set, c)
        if not cands:
            continue
        for size in (1, 2, 3):
            for combo in combinations(cands, size):
                if not _valid_union(g, s_set, combo):
                    continue
                union = frozenset().union(*(comp for comp, _ in combo))
                return TTypeReport(
                    vertices=union,
                    witnesses=frozenset(s_set),
                    bound=c,
                    certified_td=_certify(g, union, c),
                )
    return None


def find_minimal_ltype(g: Graph, c: int, length: int) -> Optional[LTypeReport]:
    """As find_minimal_ttype but the witness set must be a pair joined by an
    induced path of length >= `length` inside the closure."""
    if c < 1 or length < 1:
        raise InvalidParams("bounds must be >= 1")
    verts = g.vertices()
    for s_set in combinations(verts, 2):
        cands = _witness_candidates(g, s_set, c)
        if not cands:
            continue
        for size in (1, 2, 3):
            for combo in combinations(cands, size):
                if not _valid_union(g, s_set, combo):
                    continue
                union = frozenset().union(*(comp for comp, _ in combo))
                gadget = g.induced(union | set(s_set))
                path = induced_path_between(gadget, s_set[0], s_set[1], length)
                if path is None:
                    continue
                return LTypeReport(
                    vertices=union,
                    witnesses=frozenset(s_set),
                    bound=c,
                    certified_td=_certify(g, union, c),
                    length_bound=length,
                    witness_path=path,
                )
    return None
