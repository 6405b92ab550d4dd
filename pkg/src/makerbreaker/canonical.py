"""Canonical form of a residual hypergraph, for isomorphy transpositions.

Iterative colour refinement over the bipartite square/edge incidence graph,
with individualize-and-refine branching on the first non-singleton square
cell.  The certificate is the lexicographically smallest relabelled edge
list over all branches, so any two isomorphic residuals produce the same
certificate, and the winning branch yields a square -> label permutation
used to translate stored moves.
"""
from __future__ import annotations


def _refine(colors: dict[int, int], adj: dict[int, list[int]]) -> dict[int, int]:
    """Stable colouring; colour ids depend only on structure, not on names."""
    while True:
        sig = {v: (colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in adj}
        order = sorted(set(sig.values()))
        ranks = {s: i for i, s in enumerate(order)}
        new = {v: ranks[sig[v]] for v in adj}
        if len(set(new.values())) == len(set(colors.values())):
            return new
        colors = new


def canonical_residual(
    edges: list[tuple[int, ...]],
) -> tuple[tuple, dict[int, int]]:
    """Certificate and square->label map for a residual edge structure.

    Only squares appearing in some edge participate; isolated squares never
    affect play and are ignored.
    """
    squares = sorted(set(s for e in edges for s in e))
    if not squares:
        return ((0, ()), {})
    adj: dict[int, list[int]] = {s: [] for s in squares}
    sizes = sorted(set(len(e) for e in edges))
    size_rank = {l: i for i, l in enumerate(sizes)}
    colors: dict[int, int] = {s: 0 for s in squares}
    for i, e in enumerate(edges):
        ev = -(i + 1)
        adj[ev] = list(e)
        colors[ev] = len(sizes) + 1 + size_rank[len(e)]
        for s in e:
            adj[s].append(ev)

    best: list[tuple | None] = [None]
    best_label: list[dict[int, int]] = [{}]

    def descend(cols: dict[int, int]) -> None:
        cols = _refine(cols, adj)
        cells: dict[int, list[int]] = {}
        for s in squares:
            cells.setdefault(cols[s], []).append(s)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            label = {s: rank for rank, s in
                     enumerate(sorted(squares, key=lambda s: cols[s]))}
            cert = (len(squares),
                    tuple(sorted(tuple(sorted(label[s] for s in e)) for e in edges)))
            if best[0] is None or cert < best[0]:
                best[0] = cert
                best_label[0] = label
            return
        fresh = max(cols.values()) + 1
        for v in sorted(target):
            branch = dict(cols)
            branch[v] = fresh
            descend(branch)

    descend(colors)
    assert best[0] is not None
    return best[0], best_label[0]
