"""Ruleset generators: plain (m,n,k) boards and the truncated 4xn block.

The truncated block is the building unit for reducing 7-in-a-row on the
infinite board to finite games: the plane is tiled by 4xn blocks, and the
block's edge set must be rich enough that every 7-line on the infinite
board contains some block edge translated into place.  verify_block_coverage
checks exactly that property by brute force over a 3x3 block window.
"""
from __future__ import annotations

from dataclasses import dataclass

from .board import Ruleset, Square

_DIRS = {
    "horizontal": (0, 1),
    "vertical": (1, 0),
    "diag_down": (1, 1),   # row and col both increasing
    "diag_up": (1, -1),    # row increasing, col decreasing
}


def generate_mnk(m: int, n: int, k: int) -> Ruleset:
    """All k-in-a-row lines (4 directions) on an m x n board."""
    edges = []
    for r in range(1, m + 1):
        for c in range(1, n + 1):
            for dr, dc in ((0, 1), (1, 0), (1, 1), (1, -1)):
                rr, cc = r + (k - 1) * dr, c + (k - 1) * dc
                if 1 <= rr <= m and 1 <= cc <= n:
                    edges.append([Square(r + i * dr, c + i * dc) for i in range(k)])
    return Ruleset(m, n, k, edges, name=f"mnk-{m}x{n}-k{k}")


def trunc7_edges(n: int) -> list[list[Square]]:
    """Edge families of the truncated 4xn block for the 7-in-a-row tiling."""
    if n < 7:
        raise ValueError("block width must be at least 7")
    edges: list[list[Square]] = []
    # horizontal 4-lines anchored at both block ends
    for i in range(1, 5):
        edges.append([Square(i, j) for j in range(1, 5)])
        edges.append([Square(i, j) for j in range(n - 3, n + 1)])
    # interior horizontal 7-lines
    for i in range(1, 5):
        for j in range(2, n - 6):
            edges.append([Square(i, j + t) for t in range(7)])
    # vertical 4-lines
    for j in range(1, n + 1):
        edges.append([Square(i, j) for i in range(1, 5)])
    # all diagonal 4-lines, both slopes
    for j in range(1, n - 2):
        edges.append([Square(1 + t, j + t) for t in range(4)])
        edges.append([Square(4 - t, j + t) for t in range(4)])
    # corner 3-lines: fragments of diagonals crossing into the neighbour
    # block with a 3-1 split (the larger part is kept)
    edges.append([Square(2, 1), Square(3, 2), Square(4, 3)])
    edges.append([Square(3, 1), Square(2, 2), Square(1, 3)])
    edges.append([Square(1, n - 2), Square(2, n - 1), Square(3, n)])
    edges.append([Square(4, n - 2), Square(3, n - 1), Square(2, n)])
    # corner 2-lines: 2-2 split diagonals, keeping the upper pair
    edges.append([Square(2, 1), Square(1, 2)])
    edges.append([Square(1, n - 1), Square(2, n)])
    return edges


def generate_trunc7(n: int) -> Ruleset:
    """Truncated (4, n, 7) ruleset: 7-lines plus block-boundary fragments."""
    return Ruleset(4, n, 7, trunc7_edges(n), name=f"trunc7-{n}")


@dataclass
class CoverageReport:
    n: int
    checked: int
    passed: bool
    uncovered: list[tuple[str, tuple[int, int]]]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "checked": self.checked,
            "passed": self.passed,
            "uncovered": [{"dir": d, "anchor": [r, c]} for d, (r, c) in self.uncovered],
        }


def verify_block_coverage(rs: Ruleset, n: int | None = None) -> CoverageReport:
    """Check that every infinite-board 7-line contains a translated edge.

    Tiles the plane with 4 x n blocks and enumerates every 7-line whose
    anchor square lies in a central block.  A line is covered if some block
    of the surrounding window holds an edge whose translate is a subset of
    the line.  By periodicity this check over one anchor block decides the
    whole plane.
    """
    if n is None:
        n = rs.cols
    if rs.rows != 4 or rs.cols != n:
        raise ValueError("coverage check expects a 4 x n block ruleset")
    edge_sets = [frozenset(e.squares) for e in rs.edges]

    uncovered = []
    checked = 0
    for dname, (dr, dc) in _DIRS.items():
        for r in range(1, 5):
            for c in range(1, n + 1):
                line = [(r + t * dr, c + t * dc) for t in range(7)]
                checked += 1
                if not _line_covered(line, edge_sets, n):
                    uncovered.append((dname, (r, c)))
    return CoverageReport(n=n, checked=checked, passed=not uncovered, uncovered=uncovered)


def _line_covered(line: list[tuple[int, int]], edge_sets: list[frozenset], n: int) -> bool:
    # blocks that can intersect a line anchored in block (0, 0): the line
    # extends at most 6 steps down and 6 sideways, so a 3x3 block window
    # (block-rows 0..2, block-cols -1..1) suffices.
    for bi in range(0, 3):
        for bj in range(-1, 2):
            local = frozenset(
                Square(r - 4 * bi, c - n * bj)
                for (r, c) in line
                if 1 <= r - 4 * bi <= 4 and 1 <= c - n * bj <= n
            )
            if len(local) < 2:
                continue
            for es in edge_sets:
                if es <= local:
                    return True
    return False
