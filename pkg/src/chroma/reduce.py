"""Equivalence-preserving reduction steps for the colouring solvers.

Every step records enough payload to replay it mechanically and to recolour
the removed vertices afterwards: degree-2 peeling, protected-fan
contraction (three variants by colour budget and fan parity), removal of
bounded-treedepth pockets hanging off one or two witnesses (ttype/ltype,
three variants by which witness colourings extend), and bridge stripping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .colouring import Colouring, precolouring_extension
from .errors import InvalidFan, InvalidParams, InvalidReport, RangeTooSmall
from .graph import EdgeId, Graph, edge_id
from .patterns import find_protected_fan
from .structure import (
    LTypeReport,
    TTypeReport,
    find_minimal_ltype,
    find_minimal_ttype,
)
from .treedepth import TreedepthValue, treedepth_exact


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # degree2 | fan | ltype | ttype | bridges
    subtype: Optional[int]  # 1|2|3 for fan/ltype/ttype, else None
    removed: tuple[int, ...]
    witnesses: tuple[int, ...]  # fan poles (centre, end, end) or witness set
    added_edges: tuple[EdgeId, ...]
    merged: Optional[int] = None
    removed_edges: tuple[EdgeId, ...] = ()

    def to_record(self) -> dict:
        return {
            "kind": self.kind,
            "subtype": self.subtype,
            "removed": list(self.removed),
            "witnesses": list(self.witnesses),
            "added_edges": [list(e) for e in self.added_edges],
            "merged": self.merged,
            "removed_edges": [list(e) for e in self.removed_edges],
        }


@dataclass(frozen=True)
class NoInstance:
    reason: str = ""


def apply_step(g: Graph, step: ReductionStep) -> Graph:
    """Mechanical replay of one step on its pre-graph."""
    if step.removed_edges:
        g = g.without_edges(step.removed_edges)
    if step.removed:
        g = g.without_vertices(step.removed)
    if step.merged is not None:
        nbrs = [b if a == step.merged else a for a, b in step.added_edges]
        g, w = g.add_vertex(nbrs)
        if w != step.merged:
            raise InvalidParams(f"replay produced vertex {w}, trace says {step.merged}")
    else:
        for u, v in step.added_edges:
            g = g.with_edge(u, v)
    return g


@dataclass(frozen=True)
class ReductionTrace:
    initial_hash: str
    steps: tuple[ReductionStep, ...]
    final: Graph = field(hash=False)

    def replay(self, initial: Graph) -> Graph:
        if initial.content_hash() != self.initial_hash:
            raise InvalidParams("trace does not belong to this graph")
        g = initial
        for step in self.steps:
            g = apply_step(g, step)
        return g

    def snapshots(self, initial: Graph) -> list[Graph]:
        """[G_0, ..., G_T]: the graph before/after every step."""
        if initial.content_hash() != self.initial_hash:
            raise InvalidParams("trace does not belong to this graph")
        out = [initial]
        for step in self.steps:
            out.append(apply_step(out[-1], step))
        return out

    def to_record(self) -> dict:
        return {
            "initial_hash": self.initial_hash,
            "steps": [s.to_record() for s in self.steps],
        }


# ---------------------------------------------------------------------------
# Individual operations
# ---------------------------------------------------------------------------


def remove_degree2(g: Graph, r: int) -> tuple[Graph, list[ReductionStep]]:
    """Peel vertices of degree <= 2 until min degree >= 3 or nothing is left.

    Needs r >= 3: a removed vertex always has a spare colour available when
    reinserted.
    """
    if r < 3:
        raise RangeTooSmall("degree-2 removal needs r >= 3")
    steps: list[ReductionStep] = []
    while g.n:
        v = next((u for u in g.vertices() if g.degree(u) <= 2), None)
        if v is None:
            break
        steps.append(ReductionStep("degree2", None, (v,), (), ()))
        g = g.without_vertices([v])
    return g, steps


def _fan_poles(g: Graph, q: frozenset[int]) -> tuple[int, int, int]:
    """(centre, end, end) of the induced fan on q; raises InvalidFan."""
    sub = g.induced(q)
    order = len(q)
    centres = [v for v in q if sub.degree(v) == order - 1]
    if order < 4 or len(centres) != 1:
        raise InvalidFan("vertex set does not induce a fan of order >= 4")
    z = centres[0]
    ends = sorted(v for v in q if v != z and sub.degree(v) == 2)
    if len(ends) != 2:
        raise InvalidFan("fan path ends not identifiable")
    # walk the path from one end to check shape and protectedness
    path = [ends[0]]
    while len(path) < order - 1:
        nxt = [
            w for w in sub.neighbours(path[-1])
            if w != z and (len(path) < 2 or w != path[-2])
        ]
        if len(nxt) != 1:
            raise InvalidFan("fan path is broken")
        path.append(nxt[0])
    if path[-1] != ends[1] or sub.m != 2 * (order - 1) - 1:
        raise InvalidFan("induced subgraph is not a fan")
    for v in path[1:-1]:
        if not g.neighbour_set(v) <= q:
            raise InvalidFan(f"interior vertex {v} has neighbours outside the fan")
    return z, ends[0], ends[1]


def fan_contract(
    g: Graph, q: frozenset[int], r: int, m: int, k: int
) -> tuple[Graph, ReductionStep]:
    """Contract a protected fan of order m+k+2.

    r >= 4 deletes the interior outright.  With exactly three colours the
    fan forces its poles: odd order makes all three pairwise distinct (add
    the end-end edge), even order forces the two ends equal (merge them).
    """
    if r < 3:
        raise RangeTooSmall("fan contraction needs r >= 3")
    if len(q) != m + k + 2:
        raise InvalidFan(f"fan must have order {m + k + 2}, got {len(q)}")
    z, x, y = _fan_poles(g, q)
    interior = tuple(sorted(q - {z, x, y}))
    if r >= 4:
        step = ReductionStep("fan", 1, interior, (z, x, y), ())
        return g.without_vertices(interior), step
    if len(q) % 2 == 1:
        step = ReductionStep("fan", 2, interior, (z, x, y), ((min(x, y), max(x, y)),))
        return g.without_vertices(interior).with_edge(x, y), step
    outside = (g.neighbour_set(x) | g.neighbour_set(y)) - q
    removed = tuple(sorted(q - {z}))
    g2 = g.without_vertices(removed)
    g2, w = g2.add_vertex(sorted(outside | {z}))
    added = tuple(edge_id(w, b) for b in sorted(outside | {z}))
    step = ReductionStep("fan", 3, removed, (z, x, y), added, merged=w)
    return g2, step


def _gadget_extension(
    g: Graph, closure: frozenset[int], fixed: Colouring, r: int
) -> Optional[Colouring]:
    gadget = g.induced(closure)
    res = treedepth_exact(gadget, cap=max(gadget.n, 1))
    assert isinstance(res, TreedepthValue)
    return precolouring_extension(gadget, res.forest, fixed, r)


def _validate_pocket_report(g: Graph, rep) -> None:
    c, s = rep.vertices, rep.witnesses
    if not c or not (c | s) <= set(g.vertices()):
        raise InvalidReport("report references missing vertices")
    outside = set()
    for v in c:
        outside |= g.neighbour_set(v)
    if outside - c != set(s):
        raise InvalidReport("witness set is not the exact outside neighbourhood")
    closure = c | s
    for w in s:
        if len(g.neighbour_set(w) & closure) >= 2:
            continue
        raise InvalidReport(f"witness {w} lacks two neighbours in the closure")


PocketResult = Union[NoInstance, tuple[Graph, ReductionStep]]


def _pocket_remove(g: Graph, rep, r: int, kind: str) -> PocketResult:
    """Shared body of the ttype/ltype removal: branch on the witness
    colourings of the closure and delete / add an edge / merge accordingly."""
    _validate_pocket_report(g, rep)
    c = rep.vertices
    witnesses = tuple(sorted(rep.witnesses))
    closure = frozenset(c | set(witnesses))
    if len(witnesses) == 1:
        (u,) = witnesses
        if _gadget_extension(g, closure, {u: 1}, r) is None:
            return NoInstance(f"{kind} closure admits no {r}-colouring")
        step = ReductionStep(kind, 1, tuple(sorted(c)), witnesses, ())
        return g.without_vertices(c), step
    u, v = witnesses
    same = _gadget_extension(g, closure, {u: 1, v: 1}, r)
    diff = _gadget_extension(g, closure, {u: 1, v: 2}, r) if r >= 2 else None
    if same is None and diff is None:
        return NoInstance(f"{kind} closure admits no {r}-colouring")
    removed = tuple(sorted(c))
    if same is not None and diff is not None:
        step = ReductionStep(kind, 1, removed, witnesses, ())
        return g.without_vertices(c), step
    if diff is not None:
        e = edge_id(u, v)
        g2 = g.without_vertices(c)
        if g2.has_edge(u, v):
            step = ReductionStep(kind, 2, removed, witnesses, ())
            return g2, step
        step = ReductionStep(kind, 2, removed, witnesses, (e,))
        return g2.with_edge(u, v), step
    # only the equal-colours branch extends; u,v cannot be adjacent here
    outside = (g.neighbour_set(u) | g.neighbour_set(v)) - closure
    removed_all = tuple(sorted(closure))
    g2 = g.without_vertices(removed_all)
    g2, w = g2.add_vertex(sorted(outside))
    added = tuple(edge_id(w, b) for b in sorted(outside))
    step = ReductionStep(kind, 3, removed_all, witnesses, added, merged=w)
    return g2, step


def l_remove(g: Graph, rep: LTypeReport, r: int) -> PocketResult:
    if len(rep.witnesses) != 2:
        raise InvalidReport("ltype removal needs a witness pair")
    return _pocket_remove(g, rep, r, "ltype")


def t_remove(g: Graph, rep: TTypeReport, r: int) -> PocketResult:
    if len(rep.witnesses) not in (1, 2):
        raise InvalidReport("ttype removal needs one or two witnesses")
    return _pocket_remove(g, rep, r, "ttype")


def bridge_strip_step(g: Graph) -> Optional[tuple[Graph, ReductionStep]]:
    """Delete every bridge edge; None when the graph has no bridges."""
    bridges = tuple(e for e, _ in g.bridges())
    if not bridges:
        return None
    step = ReductionStep("bridges", None, (), (), (), removed_edges=bridges)
    return g.without_edges(bridges), step


def strip_bridges(g: Graph) -> list[Graph]:
    """Connected components after deleting all bridges; the colouring
    decision of the whole graph is the conjunction over the parts (r >= 2)."""
    got = bridge_strip_step(g)
    h = got[0] if got else g
    return [h.induced(comp) for comp in h.connected_components()]


# ---------------------------------------------------------------------------
# Pipelines
# ---------------------------------------------------------------------------


def hgraph_pocket_bounds(m: int, k: int) -> tuple[int, int]:
    """(treedepth bound, length bound) for the ltype phase of the H-family
    preprocessing."""
    return (4 * k - 3) * (8 * k * k - 6 * k + 2 * m + 8) - 1, m + k


def star_pocket_bound(k: int) -> int:
    """ttype treedepth bound for the star-family preprocessing."""
    return 16 * (2 * k - 1) * (k - 1)


PipelineResult = Union[NoInstance, tuple[Graph, ReductionTrace]]


def preprocess_H(g: Graph, r: int, m: int, k: int) -> PipelineResult:
    """Degree-2 peeling, then alternately contract protected fans of order
    m+k+2 (exhaustively, fans first) and remove one ltype pocket per round,
    re-peeling after every step, until a fixpoint."""
    if m < 1 or k < 1:
        raise InvalidParams("m and k must be >= 1")
    if r < 3:
        raise RangeTooSmall("preprocessing applies for r >= 3 only")
    c, ell = hgraph_pocket_bounds(m, k)
    order = m + k + 2
    initial_hash = g.content_hash()
    steps: list[ReductionStep] = []
    work, peeled = remove_degree2(g, r)
    steps += peeled
    while work.n:
        fan = find_protected_fan(work, order)
        if fan is not None:
            work, step = fan_contract(work, fan[3], r, m, k)
            steps.append(step)
            work, peeled = remove_degree2(work, r)
            steps += peeled
            continue
        rep = find_minimal_ltype(work, c, ell)
        if rep is not None:
            res = l_remove(work, rep, r)
            if isinstance(res, NoInstance):
                return res
            work, step = res
            steps.append(step)
            work, peeled = remove_degree2(work, r)
            steps += peeled
            continue
        break
    return work, ReductionTrace(initial_hash, tuple(steps), work)


def preprocess_S(g: Graph, r: int, k: int) -> PipelineResult:
    """Exhaustive ttype-pocket removal at the star-family treedepth bound.

    For k = 1 the bound is zero, no pocket can exist, and the pipeline is
    the identity.
    """
    if k < 1:
        raise InvalidParams("k must be >= 1")
    if r < 1:
        raise InvalidParams("r must be >= 1")
    c = star_pocket_bound(k)
    initial_hash = g.content_hash()
    steps: list[ReductionStep] = []
    work = g
    if c >= 1:
        while work.n:
            rep = find_minimal_ttype(work, c)
            if rep is None:
                break
            res = t_remove(work, rep, r)
            if isinstance(res, NoInstance):
                return res
            work, step = res
            steps.append(step)
    return work, ReductionTrace(initial_hash, tuple(steps), work)


# ---------------------------------------------------------------------------
# Certificate unwinding
# ---------------------------------------------------------------------------


def unwind_colouring(
    initial: Graph, trace: ReductionTrace, final_colouring: Colouring, r: int
) -> Colouring:
    """Extend a colouring of the trace's final graph back to the initial
    graph, re-colouring every removed gadget.

    Each step's branching semantics guarantee the local extension exists;
    a failure here means the trace and colouring do not belong together.
    """
    snaps = trace.snapshots(initial)
    col = dict(final_colouring)
    for step, pre in zip(reversed(trace.steps), reversed(snaps[:-1])):
        col = _undo_step(pre, step, col, r)
    return col


def _undo_step(pre: Graph, step: ReductionStep, col: Colouring, r: int) -> Colouring:
    col = dict(col)
    if step.kind == "degree2":
        (v,) = step.removed
        taken = {col[w] for w in pre.neighbours(v)}
        col[v] = next(c for c in range(1, r + 1) if c not in taken)
        return col
    if step.kind == "bridges":
        return _fix_bridge_conflicts(pre, step.removed_edges, col)
    if step.kind == "fan":
        z, x, y = step.witnesses
        if step.subtype == 3:
            w = step.merged
            col[x] = col[y] = col[w]
            del col[w]
        q = frozenset(step.removed) | {z, x, y}
        fixed = {z: col[z], x: col[x], y: col[y]}
        ext = _gadget_extension(pre, q, fixed, r)
        if ext is None:
            raise InvalidParams("fan interior recolouring failed (corrupt trace)")
        col.update(ext)
        return col
    if step.kind in ("ltype", "ttype"):
        witnesses = step.witnesses
        if step.subtype == 3:
            u, v = witnesses
            w = step.merged
            col[u] = col[v] = col[w]
            del col[w]
            pocket = frozenset(step.removed) - set(witnesses)
        else:
            pocket = frozenset(step.removed)
        closure = pocket | set(witnesses)
        fixed = {s: col[s] for s in witnesses}
        ext = _gadget_extension(pre, closure, fixed, r)
        if ext is None:
            raise InvalidParams("pocket recolouring failed (corrupt trace)")
        col.update(ext)
        return col
    raise InvalidParams(f"unknown step kind {step.kind}")


def _fix_bridge_conflicts(
    pre: Graph, bridges: tuple[EdgeId, ...], col: Colouring
) -> Colouring:
    """Recolour components of the stripped graph so every bridge is proper.

    The stripped components form a forest under the bridges; a BFS over it
    fixes each child component with one colour transposition (needs two
    colours to exist, i.e. r >= 2).
    """
    stripped = pre.without_edges(bridges)
    comps = stripped.connected_components()
    home = {}
    for i, comp in enumerate(comps):
        for v in comp:
            home[v] = i
    adj: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(len(comps))}
    for u, v in bridges:
        adj[home[u]].append((home[v], u, v))
        adj[home[v]].append((home[u], v, u))
    col = dict(col)
    seen: set[int] = set()
    for root in range(len(comps)):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            cur = queue.pop()
            for child, a, b in adj[cur]:
                if child in seen:
                    continue
                seen.add(child)
                if col[a] == col[b]:
                    other = 1 if col[b] != 1 else 2
                    swap = {col[b]: other, other: col[b]}
                    for v in comps[child]:
                        col[v] = swap.get(col[v], col[v])
                queue.append(child)
    return col
