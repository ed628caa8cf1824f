"""Exact treedepth with certifying elimination forests.

An elimination forest is a rooted forest on V(G) in which every graph edge
joins an ancestor-descendant pair; the treedepth is the minimum forest
height (vertices on the longest root-to-leaf chain).  The computation is a
recursive branch-and-bound over root choices, memoized on vertex bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import InvalidParams
from .graph import Graph, SignedPath

MEMO_SIZE_LIMIT = 24  # memoize component masks up to this many vertices


@dataclass(frozen=True)
class EliminationForest:
    """parent[v] is v's parent, roots have parent None."""

    parent: dict[int, Optional[int]] = field(hash=False)

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(sorted(v for v, p in self.parent.items() if p is None))

    def depth_map(self) -> dict[int, int]:
        depth: dict[int, int] = {}

        def depth_of(v: int) -> int:
            if v in depth:
                return depth[v]
            p = self.parent[v]
            d = 1 if p is None else depth_of(p) + 1
            depth[v] = d
            return d

        for v in self.parent:
            depth_of(v)
        return depth

    @property
    def height(self) -> int:
        return max(self.depth_map().values(), default=0)

    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in self.parent}
        for v, p in self.parent.items():
            if p is not None:
                out[p].append(v)
        for kids in out.values():
            kids.sort()
        return out


@dataclass(frozen=True)
class TreedepthValue:
    value: int
    forest: EliminationForest


@dataclass(frozen=True)
class ExceedsCap:
    cap: int


TreedepthResult = Union[TreedepthValue, ExceedsCap]


def validate_elimination_forest(g: Graph, forest: EliminationForest) -> bool:
    """Definition-level check: spanning, acyclic, every edge ancestor-descendant."""
    if set(forest.parent) != set(g.vertices()):
        return False
    ancestors: dict[int, set[int]] = {}

    def chain(v: int) -> set[int] | None:
        if v in ancestors:
            return ancestors[v]
        seen: set[int] = set()
        cur = forest.parent[v]
        while cur is not None:
            if cur in seen or cur == v:
                return None
            seen.add(cur)
            if cur in ancestors:
                seen |= ancestors[cur]
                break
            cur = forest.parent[cur]
        ancestors[v] = seen
        return seen

    for v in g.vertices():
        if chain(v) is None:
            return False
    for u, v in g.edges():
        if u not in ancestors[v] and v not in ancestors[u]:
            return False
    return True


def treedepth_exact(g: Graph, cap: int) -> TreedepthResult:
    """Exact treedepth and a certifying forest, or ExceedsCap if above cap."""
    if cap < 1:
        raise InvalidParams("cap must be >= 1")
    verts = g.vertices()
    if not verts:
        return TreedepthValue(0, EliminationForest({}))

    index = {v: i for i, v in enumerate(verts)}
    nbr_mask = [0] * len(verts)
    for v in verts:
        m = 0
        for w in g.neighbours(v):
            m |= 1 << index[w]
        nbr_mask[index[v]] = m

    exact: dict[int, int] = {}
    choice: dict[int, int] = {}
    too_deep: dict[int, int] = {}  # mask -> budget proven insufficient

    def bits(mask: int):
        while mask:
            b = mask & -mask
            yield b.bit_length() - 1
            mask ^= b

    def components(mask: int) -> list[int]:
        comps = []
        rest = mask
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                for i in bits(frontier):
                    nxt |= nbr_mask[i] & rest & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            rest &= ~comp
        return comps

    def path_lower_bound(mask: int) -> int:
        # a path on L vertices forces treedepth >= ceil(log2(L+1)) = L.bit_length();
        # one greedy DFS walk gives a cheap witness
        start = (mask & -mask).bit_length() - 1
        used = 1 << start
        cur = start
        count = 1
        while True:
            free = nbr_mask[cur] & mask & ~used
            if not free:
                break
            cur = (free & -free).bit_length() - 1
            used |= 1 << cur
            count += 1
        return count.bit_length()

    def solve(mask: int, budget: int) -> Optional[int]:
        """Exact treedepth of the connected subgraph on mask if <= budget."""
        size = mask.bit_count()
        if size == 1:
            return 1 if budget >= 1 else None
        memoize = size <= MEMO_SIZE_LIMIT
        if memoize:
            known = exact.get(mask)
            if known is not None:
                return known if known <= budget else None
            if too_deep.get(mask, 0) >= budget:
                return None
        if budget < 2:
            return None
        if size == 2:
            choice[mask] = (mask & -mask).bit_length() - 1
            if memoize:
                exact[mask] = 2
            return 2
        lo = path_lower_bound(mask)
        if lo > budget:
            if memoize:
                too_deep[mask] = max(too_deep.get(mask, 0), budget)
            return None

        # root order: balanced splits first, then high degree; balance keeps
        # long paths tractable where degree order alone degenerates
        def rank(i: int) -> tuple:
            rest = mask & ~(1 << i)
            largest = max((c.bit_count() for c in components(rest)), default=0)
            return (largest, -(nbr_mask[i] & mask).bit_count(), i)

        order = sorted(bits(mask), key=rank)
        best: Optional[int] = None
        limit = budget
        for i in order:
            rest = mask & ~(1 << i)
            worst = 0
            ok = True
            for comp in sorted(components(rest), key=lambda c: -c.bit_count()):
                got = solve(comp, limit - 1)
                if got is None:
                    ok = False
                    break
                worst = max(worst, got)
            if ok:
                cand = 1 + worst
                if best is None or cand < best:
                    best = cand
                    choice[mask] = i
                    limit = cand - 1  # only look for strictly better
                    if best == lo:
                        break
        if best is None:
            if memoize:
                too_deep[mask] = max(too_deep.get(mask, 0), budget)
            return None
        if memoize:
            exact[mask] = best
        return best

    def rebuild(mask: int, parent: Optional[int], out: dict[int, Optional[int]]):
        size = mask.bit_count()
        if size == 1:
            out[verts[(mask & -mask).bit_length() - 1]] = parent
            return
        if mask not in choice:
            solve(mask, len(verts))
        root_bit = choice[mask]
        root_v = verts[root_bit]
        out[root_v] = parent
        for comp in components(mask & ~(1 << root_bit)):
            rebuild(comp, root_v, out)

    full = (1 << len(verts)) - 1
    value = 0
    comps = components(full)
    for comp in comps:
        got = solve(comp, cap)
        if got is None:
            return ExceedsCap(cap)
        value = max(value, got)
    parent: dict[int, Optional[int]] = {}
    for comp in comps:
        rebuild(comp, None, parent)
    forest = EliminationForest(parent)
    return TreedepthValue(value, forest)


def long_path_witness(g: Graph) -> SignedPath:
    """Deepest root-to-leaf branch over per-component DFS trees.

    Every DFS tree is an elimination forest, so the deepest branch has at
    least td(G) vertices, i.e. length at least td(G) - 1.
    """
    if g.n == 0:
        raise InvalidParams("graph must be non-empty")
    best: list[int] = []
    seen: set[int] = set()
    for root in g.vertices():
        if root in seen:
            continue
        parent: dict[int, Optional[int]] = {root: None}
        depth = {root: 1}
        deepest = root
        stack = [(root, iter(g.neighbours(root)))]
        seen.add(root)
        while stack:
            u, it = stack[-1]
            for w in it:
                if w not in seen:
                    seen.add(w)
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    if depth[w] > depth[deepest]:
                        deepest = w
                    stack.append((w, iter(g.neighbours(w))))
                    break
            else:
                stack.pop()
        branch = []
        cur: Optional[int] = deepest
        while cur is not None:
            branch.append(cur)
            cur = parent[cur]
        branch.reverse()
        if len(branch) > len(best):
            best = branch
    return SignedPath.in_graph(g, best)


def longest_induced_path(g: Graph, budget: int = 200_000) -> tuple[SignedPath, bool]:
    """Maximum induced path by backtracking.

    Exact when the node-expansion budget suffices; otherwise best-found with
    complete=False.
    """
    best: list[int] = [g.vertices()[0]] if g.n else []
    expansions = 0
    complete = True

    def extend(path: list[int], used: set[int], blocked: set[int]):
        # blocked = vertices adjacent to path[:-1]; extending past them
        # would create a chord
        nonlocal best, expansions, complete
        if expansions >= budget:
            complete = False
            return
        if len(path) > len(best):
            best = list(path)
        last = path[-1]
        for w in g.neighbours(last):
            if w in used or w in blocked:
                continue
            expansions += 1
            path.append(w)
            used.add(w)
            extend(path, used, blocked | (g.neighbour_set(last) - {w}))
            used.discard(w)
            path.pop()

    for v in g.vertices():
        extend([v], {v}, set())
    return SignedPath.in_graph(g, best), complete


def induced_path_between(
    g: Graph, s: int, t: int, min_length: int, budget: int = 200_000
) -> Optional[SignedPath]:
    """An induced s-t path of length >= min_length, or None.

    Complete within the expansion budget; the callers work on gadgets whose
    guaranteed bounds keep instances small.
    """
    if s == t:
        return None
    expansions = 0

    def extend(path: list[int], used: set[int], blocked: set[int]):
        nonlocal expansions
        last = path[-1]
        if last == t:
            return list(path) if len(path) - 1 >= min_length else None
        if expansions >= budget:
            return None
        for w in sorted(g.neighbour_set(last)):
            if w in used or w in blocked:
                continue
            if w == t and len(path) < min_length:
                continue
            expansions += 1
            path.append(w)
            used.add(w)
            got = extend(path, used, blocked | (g.neighbour_set(last) - {w}))
            if got is not None:
                return got
            used.discard(w)
            path.pop()
        return None

    got = extend([s], {s}, set())
    return SignedPath.in_graph(g, got) if got is not None else None
