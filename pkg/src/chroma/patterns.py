"""Parametric forbidden-pattern families and subgraph containment.

The families: subdivided four-branch stars, H-shaped trees (two hubs joined
by a horizontal path, two vertical branches each), fans, complete bipartite
graphs, paths and cycles.  Containment is plain (not induced) subgraph
containment; all searches are complete and deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidParams, PreconditionViolated
from .graph import Graph, build_graph

# ---------------------------------------------------------------------------
# Specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PatternSpec:
    """One member of a pattern family.

    variant: "star" (subdivided K_{1,4}), "hgraph", "fan", "biclique",
    "path", "cycle".  Parameters are edge lengths except for fan, where the
    single parameter is the number of path vertices under the centre.
    """

    variant: str
    params: tuple[int, ...]

    def __post_init__(self):
        v, p = self.variant, self.params
        if v == "star":
            if len(p) != 4 or any(x < 1 for x in p):
                raise InvalidParams(f"star needs 4 branch lengths >= 1, got {p}")
            object.__setattr__(self, "params", tuple(sorted(p, reverse=True)))
        elif v == "hgraph":
            if len(p) != 5 or p[0] < 1 or any(x < 1 for x in p[1:]):
                raise InvalidParams(f"hgraph needs (i;a,b,c,d) all >= 1, got {p}")
            i = p[0]
            hub1, hub2 = sorted(p[1:3]), sorted(p[3:5])
            if hub1 > hub2:
                hub1, hub2 = hub2, hub1
            object.__setattr__(self, "params", (i, *hub1, *hub2))
        elif v == "fan":
            if len(p) != 1 or p[0] < 3:
                raise InvalidParams(f"fan needs one order >= 3, got {p}")
        elif v == "biclique":
            if len(p) != 2 or any(x < 1 for x in p):
                raise InvalidParams(f"biclique needs two sizes >= 1, got {p}")
            object.__setattr__(self, "params", tuple(sorted(p)))
        elif v == "path":
            if len(p) != 1 or p[0] < 0:
                raise InvalidParams(f"path needs one length >= 0, got {p}")
        elif v == "cycle":
            if len(p) != 1 or p[0] < 3:
                raise InvalidParams(f"cycle needs one length >= 3, got {p}")
        else:
            raise InvalidParams(f"unknown pattern variant {v!r}")

    # constructors ---------------------------------------------------------

    @staticmethod
    def star(p: int, q: int, r: int, s: int) -> "PatternSpec":
        return PatternSpec("star", (p, q, r, s))

    @staticmethod
    def hgraph(i: int, a: int, b: int, c: int, d: int) -> "PatternSpec":
        return PatternSpec("hgraph", (i, a, b, c, d))

    @staticmethod
    def fan(n: int) -> "PatternSpec":
        return PatternSpec("fan", (n,))

    @staticmethod
    def biclique(r: int, s: int) -> "PatternSpec":
        return PatternSpec("biclique", (r, s))

    @staticmethod
    def path(length: int) -> "PatternSpec":
        return PatternSpec("path", (length,))

    @staticmethod
    def cycle(length: int) -> "PatternSpec":
        return PatternSpec("cycle", (length,))

    def format(self) -> str:
        letter = {"star": "S", "hgraph": "H", "fan": "F", "biclique": "K",
                  "path": "P", "cycle": "C"}[self.variant]
        if self.variant == "hgraph":
            i, a, b, c, d = self.params
            return f"H({i};{a},{b},{c},{d})"
        return f"{letter}({','.join(map(str, self.params))})"


_SPEC_RE = re.compile(r"^\s*([SHFKPC])\s*\(\s*([-0-9,;\s]+)\s*\)\s*$")


def parse_pattern_spec(text: str) -> PatternSpec:
    """Parse compact spec strings: S(1,2,2,2) H(3;1,2,2,2) F(8) K(4,4) P(10) C(6)."""
    m = _SPEC_RE.match(text)
    if not m:
        raise InvalidParams(f"cannot parse pattern spec {text!r}")
    letter, body = m.group(1), m.group(2)
    if letter == "H":
        if ";" not in body:
            raise InvalidParams("hgraph spec needs 'H(i;a,b,c,d)'")
        head, tail = body.split(";", 1)
        nums = [int(head)] + [int(x) for x in tail.split(",")]
    else:
        nums = [int(x) for x in body.split(",")]
    variant = {"S": "star", "H": "hgraph", "F": "fan", "K": "biclique",
               "P": "path", "C": "cycle"}[letter]
    return PatternSpec(variant, tuple(nums))


# ---------------------------------------------------------------------------
# Instantiation with role labels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LabelledPattern:
    spec: PatternSpec
    graph: Graph
    roles: dict = field(hash=False)

    @property
    def n(self) -> int:
        return self.graph.n


def instantiate(spec: PatternSpec) -> LabelledPattern:
    """Canonical labelled copy of the pattern.

    Vertex numbering guarantees every vertex above 0 has a smaller-indexed
    neighbour, so index-order backtracking stays connected.
    """
    v, p = spec.variant, spec.params
    edges: list[tuple[int, int]] = []
    roles: dict = {}
    if v == "star":
        nxt = 1
        branches = []
        for length in p:
            prev = 0
            branch = []
            for _ in range(length):
                edges.append((prev, nxt))
                branch.append(nxt)
                prev = nxt
                nxt += 1
            branches.append(tuple(branch))
        roles = {"centre": 0, "branches": tuple(branches)}
        n = nxt
    elif v == "hgraph":
        i, a, b, c, d = p
        horizontal = [0]
        nxt = 1
        for _ in range(i - 1):
            edges.append((horizontal[-1], nxt))
            horizontal.append(nxt)
            nxt += 1
        hub2 = nxt
        edges.append((horizontal[-1], hub2))
        horizontal.append(hub2)
        nxt += 1
        branches = []
        for hub, length in ((0, a), (0, b), (hub2, c), (hub2, d)):
            prev = hub
            branch = []
            for _ in range(length):
                edges.append((prev, nxt))
                branch.append(nxt)
                prev = nxt
                nxt += 1
            branches.append(tuple(branch))
        roles = {"hubs": (0, hub2), "horizontal": tuple(horizontal),
                 "branches": tuple(branches)}
        n = nxt
    elif v == "fan":
        order = p[0]
        path = list(range(1, order + 1))
        edges = [(0, w) for w in path] + [(w, w + 1) for w in path[:-1]]
        roles = {"centre": 0, "path": tuple(path),
                 "poles": (0, path[0], path[-1])}
        n = order + 1
    elif v == "biclique":
        r, s = p
        side_a = [0] + list(range(2, r + 1))
        side_b = [1] + list(range(r + 1, r + s))
        edges = [(x, y) for x in side_a for y in side_b]
        roles = {"side_a": tuple(side_a), "side_b": tuple(side_b)}
        n = r + s
    elif v == "path":
        length = p[0]
        edges = [(i, i + 1) for i in range(length)]
        roles = {"ends": (0, length)}
        n = length + 1
    else:  # cycle
        length = p[0]
        edges = [(i, (i + 1) % length) for i in range(length)]
        roles = {}
        n = length
    return LabelledPattern(spec, build_graph(n, sorted(set(edges))), roles)


def three_armed_star(arm: int) -> LabelledPattern:
    """Three branches of ``arm`` edges around a centre (auxiliary pattern).

    Not a PatternSpec family member; used by the degree-4 centre lift and
    its tests.
    """
    if arm < 1:
        raise InvalidParams("arm length must be >= 1")
    edges = []
    nxt = 1
    branches = []
    for _ in range(3):
        prev = 0
        branch = []
        for _ in range(arm):
            edges.append((prev, nxt))
            branch.append(nxt)
            prev = nxt
            nxt += 1
        branches.append(tuple(branch))
    g = build_graph(nxt, edges)
    spec = PatternSpec("path", (0,))  # placeholder spec; roles carry the truth
    return LabelledPattern(spec, g, {"centre": 0, "branches": tuple(branches)})


# ---------------------------------------------------------------------------
# Embeddings
# ---------------------------------------------------------------------------


@dataclass
class EmbeddingMap:
    """Injective map pattern-vertex -> host-vertex carrying pattern edges."""

    pattern: LabelledPattern
    mapping: dict[int, int]

    def validate(self, host: Graph) -> bool:
        vals = list(self.mapping.values())
        if len(set(vals)) != len(vals):
            return False
        if set(self.mapping) != set(self.pattern.graph.vertices()):
            return False
        if any(v not in host for v in vals):
            return False
        return all(
            host.has_edge(self.mapping[a], self.mapping[b])
            for a, b in self.pattern.graph.edges()
        )

    def image(self, role_vertices) -> tuple[int, ...]:
        return tuple(self.mapping[v] for v in role_vertices)


def _find_embedding(host: Graph, pattern: LabelledPattern) -> Optional[dict[int, int]]:
    pg = pattern.graph
    p = pg.n
    if host.n < p or host.max_degree() < pg.max_degree():
        return None
    pverts = list(range(p))
    pdeg = [pg.degree(v) for v in pverts]
    # pattern neighbours with smaller index (instantiate guarantees >= 1 for v > 0)
    back = [tuple(w for w in pg.neighbours(v) if w < v) for v in pverts]
    host_vertices = host.vertices()
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def place(idx: int) -> bool:
        if idx == p:
            return True
        anchors = back[idx]
        if anchors:
            cands = host.neighbour_set(mapping[anchors[0]])
            for a in anchors[1:]:
                cands = cands & host.neighbour_set(mapping[a])
            candidates = sorted(cands)
        else:
            candidates = host_vertices
        need = pdeg[idx]
        for h in candidates:
            if h in used or host.degree(h) < need:
                continue
            mapping[idx] = h
            used.add(h)
            if place(idx + 1):
                return True
            used.discard(h)
            del mapping[idx]
        return False

    return dict(mapping) if place(0) else None


def contains_subgraph(host: Graph, spec: PatternSpec) -> Optional[EmbeddingMap]:
    """Complete search; returns the first embedding in index order or None.

    Index-order backtracking with ascending host candidates yields the
    lexicographically smallest embedding tuple.
    """
    pattern = instantiate(spec)
    m = _find_embedding(host, pattern)
    return EmbeddingMap(pattern, m) if m is not None else None


def is_subgraph_free(host: Graph, spec: PatternSpec) -> bool:
    return contains_subgraph(host, spec) is None


# ---------------------------------------------------------------------------
# Protected fans
# ---------------------------------------------------------------------------


def find_protected_fan(
    g: Graph, order: int
) -> Optional[tuple[int, int, int, frozenset[int]]]:
    """A vertex set Q of the given order inducing a fan whose non-pole
    vertices have all their neighbours inside Q.

    The fan of order n has a centre adjacent to a path on n-1 vertices; the
    poles are the centre and the two path ends.  Returns
    (centre, end, end, Q) or None.
    """
    if order < 3:
        raise InvalidParams("protected fan order must be >= 3")
    path_len = order - 1
    for z in g.vertices():
        nz = g.neighbour_set(z)
        if len(nz) < path_len:
            continue
        found = _fan_path(g, z, nz, path_len)
        if found is not None:
            q = frozenset(found) | {z}
            return z, found[0], found[-1], q
    return None


def _fan_path(g: Graph, z: int, nz: frozenset[int], path_len: int):
    """Chord-free path of path_len vertices inside N(z) whose interior
    vertices have neighbourhood exactly {z, prev, next}."""

    def extend(path: list[int], used: set[int]):
        if len(path) == path_len:
            return list(path)
        last = path[-1]
        for w in sorted(g.neighbour_set(last) & nz):
            if w in used:
                continue
            # no chords back to earlier path vertices
            if any(g.has_edge(w, v) for v in path[:-1]):
                continue
            # `last` becomes interior once w is appended
            if len(path) >= 2 and g.neighbour_set(last) != {z, path[-2], w}:
                continue
            path.append(w)
            used.add(w)
            got = extend(path, used)
            if got is not None:
                return got
            used.discard(w)
            path.pop()
        return None

    for start in sorted(nz):
        got = extend([start], {start})
        if got is not None:
            return got
    return None


# ---------------------------------------------------------------------------
# Degree-4 centre lift
# ---------------------------------------------------------------------------


def lift_star_centre(g: Graph, emb: EmbeddingMap, k: int) -> EmbeddingMap:
    """Rewrite a three-armed star with arms of 2k edges whose centre has a
    fourth neighbour into a four-branch star with branch lengths (1,k,k,k).

    If the extra neighbour y lies outside the first k vertices of every arm,
    y becomes the length-1 branch and the arms are truncated to length k.
    Otherwise y is some arm vertex at depth j <= k; that arm is re-rooted to
    start at y (reached directly through the centre edge) and the old arm
    head becomes the length-1 branch.
    """
    if k < 1:
        raise InvalidParams("k must be >= 1")
    if not emb.validate(g):
        raise PreconditionViolated("input star embedding does not validate")
    roles = emb.pattern.roles
    if "centre" not in roles or len(roles.get("branches", ())) != 3:
        raise PreconditionViolated("embedding is not a three-armed star")
    if any(len(b) != 2 * k for b in roles["branches"]):
        raise PreconditionViolated(f"arms must have exactly {2 * k} vertices")
    x = emb.mapping[roles["centre"]]
    arms = [emb.image(b) for b in roles["branches"]]
    if g.degree(x) < 4:
        raise PreconditionViolated("centre must have degree >= 4 in the host")

    heads = {arms[0][0], arms[1][0], arms[2][0]}
    y = min(w for w in g.neighbours(x) if w not in heads)
    shallow = {arms[i][j] for i in range(3) for j in range(1, k)}  # depths 2..k
    if y not in shallow:
        short = (y,)
        longs = [arm[:k] for arm in arms]
    else:
        i0, j0 = next(
            (i, j) for i in range(3) for j in range(1, k) if arms[i][j] == y
        )
        short = (arms[i0][0],)
        rerooted = arms[i0][j0 : j0 + k]
        longs = [arm[:k] for arm in arms]
        longs[i0] = rerooted

    target = instantiate(PatternSpec.star(1, k, k, k))
    # canonical star params sorted descending: branches (k, k, k, 1)
    branch_images = [longs[0], longs[1], longs[2], short]
    mapping = {target.roles["centre"]: x}
    for branch, image in zip(target.roles["branches"], branch_images):
        for pv, hv in zip(branch, image):
            mapping[pv] = hv
    out = EmbeddingMap(target, mapping)
    if not out.validate(g):
        raise PreconditionViolated("lifted embedding failed validation")
    return out
