"""Splitting a position's live hypergraph into independently solvable parts.

Three split shapes, tried in this order at maker-to-move nodes:

  * components: the live structure is disconnected; maker (to move) wins
    the union iff he wins at least one component.
  * cut vertex v: two sub-hypergraphs sharing exactly the square v.  Maker
    wins iff he wins either part outright, or wins both parts when given v
    pre-marked plus the move.
  * shared edge e: two disjoint square sets joined only by the single edge
    e.  Maker wins iff he wins either side without e, or wins both sides
    when each keeps its fragment of e as an extra edge.

All structure detection works on the residual hypergraph restricted to
squares that lie in at least one live edge; dead empty squares never
influence the game value.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .board import Position

_SQ = 0
_ED = 1


@dataclass
class Part:
    squares: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]


@dataclass
class SplitPlan:
    kind: str                       # none | components | cut_vertex | shared_edge
    parts: list[Part] = field(default_factory=list)
    cut_square: int | None = None
    bridge_edge: int | None = None
    bridge_fragments: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def live_structure(pos: Position) -> tuple[list[tuple[int, ...]], list[int]]:
    """Residual edges (as tuples of empty squares) and their edge ids."""
    edges = []
    ids = []
    live = pos.live
    while live:
        low = live & -live
        e = low.bit_length() - 1
        live ^= low
        edges.append(tuple(pos.edge_empties(e)))
        ids.append(e)
    return edges, ids


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[int, int] = {}

    def find(self, a: int) -> int:
        p = self.parent
        r = p.setdefault(a, a)
        while p[r] != r:
            r = p[r]
        while p[a] != r:
            p[a], a = r, p[a]
        return r

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _group_parts(edges: list[tuple[int, ...]], skip_square: int | None = None,
                 skip_edge: int | None = None) -> dict[int, list[int]]:
    """Union squares co-occurring in an edge; returns root -> edge indexes."""
    uf = _UnionFind()
    for i, sq_tuple in enumerate(edges):
        if i == skip_edge:
            continue
        sqs = [s for s in sq_tuple if s != skip_square]
        for s in sqs:
            uf.find(s)
        for a, b in zip(sqs, sqs[1:]):
            uf.union(a, b)
    groups: dict[int, list[int]] = {}
    for i, sq_tuple in enumerate(edges):
        if i == skip_edge:
            continue
        sqs = [s for s in sq_tuple if s != skip_square]
        if sqs:
            groups.setdefault(uf.find(sqs[0]), []).append(i)
    return groups


def connected_components(pos: Position) -> SplitPlan:
    edges, _ = live_structure(pos)
    groups = _group_parts(edges)
    if len(groups) <= 1:
        return SplitPlan("none" if groups else "components")
    parts = []
    for root in sorted(groups):
        eidx = groups[root]
        sqs = sorted(set(s for i in eidx for s in edges[i]))
        parts.append(Part(tuple(sqs), tuple(edges[i] for i in eidx)))
    return SplitPlan("components", parts)


def _articulation(adj: dict[int, list[int]], start: int) -> set[int]:
    """Iterative Hopcroft-Tarjan articulation vertices of one component."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int | None] = {start: None}
    artic: set[int] = set()
    timer = 0
    stack: list[tuple[int, int]] = [(start, 0)]
    children_of_root = 0
    while stack:
        v, ei = stack[-1]
        if ei == 0:
            disc[v] = low[v] = timer
            timer += 1
        if ei < len(adj[v]):
            stack[-1] = (v, ei + 1)
            w = adj[v][ei]
            if w not in disc:
                parent[w] = v
                if v == start:
                    children_of_root += 1
                stack.append((w, 0))
            elif w != parent[v]:
                low[v] = min(low[v], disc[w])
        else:
            stack.pop()
            p = parent[v]
            if p is not None:
                low[p] = min(low[p], low[v])
                if p != start and low[v] >= disc[p]:
                    artic.add(p)
    if children_of_root >= 2:
        artic.add(start)
    return artic


def _bipartite_adj(edges: list[tuple[int, ...]]) -> dict[int, list[int]]:
    """Squares and edges as one graph; edge i becomes vertex -(i + 1)."""
    adj: dict[int, list[int]] = {}
    for i, sqs in enumerate(edges):
        ev = -(i + 1)
        adj[ev] = list(sqs)
        for s in sqs:
            adj.setdefault(s, []).append(ev)
    return adj


def find_cut_vertex(pos: Position) -> SplitPlan:
    """Smallest square whose removal disconnects the live structure."""
    edges, _ = live_structure(pos)
    if not edges:
        return SplitPlan("none")
    adj = _bipartite_adj(edges)
    start = min(v for v in adj if v >= 0)
    artic = sorted(v for v in _articulation(adj, start) if v >= 0)
    if not artic:
        return SplitPlan("none")
    v = artic[0]
    groups = _group_parts(edges, skip_square=v)
    roots = sorted(groups)
    assert len(roots) >= 2, "articulation square did not split the structure"
    first, rest = groups[roots[0]], [i for r in roots[1:] for i in groups[r]]
    parts = []
    for eidx in (first, rest):
        sqs = sorted(set(s for i in eidx for s in edges[i]) | {v})
        parts.append(Part(tuple(sqs), tuple(edges[i] for i in sorted(eidx))))
    return SplitPlan("cut_vertex", parts, cut_square=v)


def find_shared_edge_split(pos: Position) -> SplitPlan:
    """Single live edge bridging two otherwise edge-disjoint square sets."""
    edges, ids = live_structure(pos)
    if len(edges) < 2:
        return SplitPlan("none")
    adj = _bipartite_adj(edges)
    start = min(v for v in adj if v >= 0)
    artic_edges = sorted(-v - 1 for v in _articulation(adj, start) if v < 0)
    for i in artic_edges:
        bridge = edges[i]
        if len(bridge) < 2:
            continue
        groups = _group_parts(edges, skip_edge=i)
        uf_root: dict[int, int] = {}
        for root, eidx in groups.items():
            for j in eidx:
                for s in edges[j]:
                    uf_root[s] = root
        # squares only on the bridge form their own singleton sides
        sides = sorted(set(uf_root.get(s, -1 - s) for s in bridge))
        if len(sides) < 2:
            continue
        anchor = uf_root.get(min(bridge), -1 - min(bridge))
        frag1 = tuple(s for s in bridge if uf_root.get(s, -1 - s) == anchor)
        frag2 = tuple(s for s in bridge if uf_root.get(s, -1 - s) != anchor)
        e1 = [j for root, eidx in groups.items() if root == anchor for j in eidx]
        e2 = [j for root, eidx in groups.items() if root != anchor for j in eidx]
        sq1 = sorted(set(s for j in e1 for s in edges[j]) | set(frag1))
        sq2 = sorted(set(s for j in e2 for s in edges[j]) | set(frag2))
        parts = [
            Part(tuple(sq1), tuple(edges[j] for j in sorted(e1))),
            Part(tuple(sq2), tuple(edges[j] for j in sorted(e2))),
        ]
        return SplitPlan(
            "shared_edge", parts, bridge_edge=ids[i],
            bridge_fragments=(frag1, frag2),
        )
    return SplitPlan("none")


def combine_cut_vertex(win1: bool, win2: bool, adv1: bool, adv2: bool) -> bool:
    """Maker wins the glued game iff either part, or both with the shared
    square pre-marked and the move in hand."""
    return win1 or win2 or (adv1 and adv2)


def combine_shared_edge(win1: bool, win2: bool, full1: bool, full2: bool) -> bool:
    """win1/win2: parts without the bridge; full1/full2: parts keeping
    their fragment of the bridge as an edge."""
    return win1 or win2 or (full1 and full2)
