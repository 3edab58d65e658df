"""Ground-truth H-curve construction on an explicit cycle graph.

Executes the curve's definition literally: start from Gray cycles on all
side-2 blocks, then repeatedly rewire 2^d sub-cube cycles into one cycle
through the central 4x2x...x2 parallelepiped of each block, doubling the
side until the whole grid is a single cycle. Slow by design; it exists to
certify the closed-form codec, not to compete with it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bitops import gray

MAX_CELLS = 1 << 20

Cell = tuple[int, ...]


@dataclass
class CycleGraph:
    """A single oriented cycle over the cells of one cube, as a successor map."""

    d: int
    side: int
    succ: dict[Cell, Cell]

    def origin(self) -> Cell:
        return tuple(min(c[i] for c in self.succ) for i in range(self.d))

    def to_list(self, start: Cell | None = None) -> list[Cell]:
        """Linearize from ``start`` (default: the lexicographically first cell)."""
        if start is None:
            start = min(self.succ)
        out = [start]
        cur = self.succ[start]
        while cur != start:
            out.append(cur)
            cur = self.succ[cur]
        return out

    def validate(self) -> None:
        """Check the map is one cycle over side^d cells with unit steps."""
        expected = self.side ** self.d
        if len(self.succ) != expected:
            raise AssertionError(f"expected {expected} cells, have {len(self.succ)}")
        seen = self.to_list()
        if len(seen) != expected:
            raise AssertionError("successor map is not a single cycle")
        for a, b in zip(seen, seen[1:] + seen[:1]):
            if _l1(a, b) != 1:
                raise AssertionError(f"non-unit step {a} -> {b}")


def base_cycle(d: int, origin: Cell | None = None) -> CycleGraph:
    """Gray-order cycle over the 2^d unit cells of a side-2 block."""
    if not 2 <= d <= 6:
        raise ValueError(f"base_cycle supports 2 <= d <= 6, got {d}")
    if origin is None:
        origin = (0,) * d
    cells = [
        tuple(origin[i] + ((gray(d, t) >> i) & 1) for i in range(d))
        for t in range(1 << d)
    ]
    succ = dict(zip(cells, cells[1:] + cells[:1]))
    return CycleGraph(d, 2, succ)


def merge_step(d: int, graphs: list[CycleGraph]) -> CycleGraph:
    """Chain 2^d sub-cube cycles arranged as a 2x...x2 block into one cycle.

    Removes the one edge each sub-cycle has inside the block's central
    parallelepiped and chains the resulting paths in cyclic Gray order of the
    sub-cube digits. Endpoint orientation is chosen greedily so every new
    edge joins adjacent cells; failure to close into a single cycle raises
    AssertionError (an implementation bug, never valid-input behaviour).
    """
    if len(graphs) != 1 << d:
        raise ValueError(f"need 2^{d} sub-cube cycles, got {len(graphs)}")
    h = graphs[0].side
    if any(g.side != h or g.d != d for g in graphs):
        raise ValueError("sub-cubes must share dimension and side")

    by_digit: dict[int, CycleGraph] = {}
    origin = tuple(min(g.origin()[i] for g in graphs) for i in range(d))
    for g in graphs:
        go = g.origin()
        digit = 0
        for i in range(d):
            step, rem = divmod(go[i] - origin[i], h)
            if rem or step not in (0, 1):
                raise ValueError(f"sub-cube at {go} does not fit a 2x..x2 block at {origin}")
            digit |= step << i
        if digit in by_digit:
            raise ValueError("two sub-cubes occupy the same block position")
        by_digit[digit] = g

    # Cut each sub-cycle at its designated parallelepiped edge.
    paths: dict[int, list[Cell]] = {}
    for a in range(1 << d):
        g = by_digit[a]
        c = tuple(origin[i] + (h if (a >> i) & 1 else h - 1) for i in range(d))
        cp = (origin[0] + (h + 1 if a & 1 else h - 2),) + c[1:]
        if g.succ.get(c) == cp:
            paths[a] = _walk(g.succ, cp, c)
        elif g.succ.get(cp) == c:
            paths[a] = _walk(g.succ, c, cp)
        else:
            raise AssertionError(
                f"sub-cube {a} has no edge between its central cells {c} and {cp}")

    order = [gray(d, t) for t in range(1 << d)]
    chain: list[Cell] | None = None
    for flip_first in (False, True):
        first = paths[order[0]]
        seq = [first[::-1] if flip_first else first]
        ok = True
        for t in range(1, 1 << d):
            p = paths[order[t]]
            end = seq[-1][-1]
            if _l1(end, p[0]) == 1:
                seq.append(p)
            elif _l1(end, p[-1]) == 1:
                seq.append(p[::-1])
            else:
                ok = False
                break
        if ok and _l1(seq[-1][-1], seq[0][0]) == 1:
            chain = [c for p in seq for c in p]
            break
    if chain is None:
        raise AssertionError("no adjacency-consistent rewiring closes into one cycle")

    succ = dict(zip(chain, chain[1:] + chain[:1]))
    return CycleGraph(d, 2 * h, succ)


def build_cycle(d: int, n: int) -> list[Cell]:
    """Full H-curve cell list for (d, n), built by repeated merging.

    Returns all 2^(d*n) cells in traversal order, linearized from the
    lexicographically first cell; all steps, including the wrap-around,
    are unit steps.
    """
    if not 2 <= d <= 6:
        raise ValueError(f"build_cycle supports 2 <= d <= 6, got {d}")
    if n < 1:
        raise ValueError(f"depth must be >= 1, got {n}")
    if (1 << (d * n)) > MAX_CELLS:
        raise ValueError(f"2^(d*n) = 2^{d * n} exceeds the oracle cap of 2^20 cells")

    side = 1 << n
    graphs: dict[Cell, CycleGraph] = {
        o: base_cycle(d, o)
        for o in itertools.product(range(0, side, 2), repeat=d)
    }
    h = 2
    while h < side:
        merged: dict[Cell, CycleGraph] = {}
        for o in itertools.product(range(0, side, 2 * h), repeat=d):
            block = [
                graphs[tuple(o[i] + step[i] * h for i in range(d))]
                for step in itertools.product((0, 1), repeat=d)
            ]
            merged[o] = merge_step(d, block)
        graphs = merged
        h *= 2
    (final,) = graphs.values()
    final.validate()
    return final.to_list()


def _walk(succ: dict[Cell, Cell], start: Cell, stop: Cell) -> list[Cell]:
    out = [start]
    cur = start
    while cur != stop:
        cur = succ[cur]
        out.append(cur)
        if len(out) > len(succ):
            raise AssertionError(f"successor map is not a cycle through {stop}")
    return out


def _l1(a: Cell, b: Cell) -> int:
    return sum(abs(x - y) for x, y in zip(a, b))
