"""Clustering statistics for random cubic queries.

A cluster is a maximal run of consecutively-ranked cells inside a query; the
per-curve mean cluster count over many uniform queries measures how well a
curve keeps nearby cells nearby in rank space. Counting is linear along the
curve by default; ``wrap=True`` joins the first and last run when the query
contains both ends of the rank range (meaningful for cyclic curves).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _backend
from .curves import KIND_IDS, CurveSpec

MAX_QUERY_CELLS = 1 << 24

# The bitmap kernel allocates 2^(n*d) bytes; past this we sort instead.
_BITMAP_ND_MAX = 26


@dataclass(frozen=True)
class CubeQuery:
    """Axis-aligned cube: origin coordinates plus a side length."""

    d: int
    origin: tuple[int, ...]
    side: int

    def __post_init__(self):
        if len(self.origin) != self.d:
            raise ValueError(f"expected {self.d} origin coordinates, got {len(self.origin)}")
        if self.side < 1:
            raise ValueError(f"side must be >= 1, got {self.side}")
        if any(o < 0 for o in self.origin):
            raise ValueError("origin coordinates must be non-negative")

    def check_inside(self, n: int) -> None:
        top = 1 << n
        if any(o + self.side > top for o in self.origin):
            raise ValueError(f"query {self} leaves the 2^{n} grid")

    def cells(self) -> np.ndarray:
        """All side^d cell coordinates, as an (side^d, d) int64 array."""
        offs = np.stack(
            [g.ravel() for g in np.meshgrid(*([np.arange(self.side)] * self.d),
                                            indexing="ij")],
            axis=1,
        ).astype(np.int64)
        return np.asarray(self.origin, dtype=np.int64)[None, :] + offs


@dataclass(frozen=True)
class ClusterStats:
    """Aggregate cluster-count statistics for one (curve, side) combination."""

    curve: str
    d: int
    n: int
    side: int
    queries: int
    seed: int
    mean: float
    stddev: float
    stderr: float


def count_clusters(codec, query: CubeQuery, wrap: bool = False,
                   backend: str | None = None) -> int:
    """Number of maximal consecutive-rank runs among the query's cells."""
    if query.d != codec.d:
        raise ValueError(f"query dimension {query.d} != codec dimension {codec.d}")
    query.check_inside(codec.n)
    if query.side ** query.d > MAX_QUERY_CELLS:
        raise ValueError(f"query holds more than {MAX_QUERY_CELLS} cells")
    ranks = codec.encode_many(query.cells(), backend=backend)
    ranks.sort()
    runs = 1 + int(np.count_nonzero(np.diff(ranks) > np.uint64(1)))
    if wrap and runs > 1 and ranks[0] == 0 and int(ranks[-1]) == codec.size - 1:
        runs -= 1
    return runs


def sample_query(d: int, n: int, side: int, rng: np.random.Generator) -> CubeQuery:
    """Uniform in-grid cubic query: each origin axis drawn from {0..2^n - side}."""
    if side > (1 << n):
        raise ValueError(f"side {side} exceeds the 2^{n} grid")
    origin = rng.integers(0, (1 << n) - side + 1, size=d)
    return CubeQuery(d, tuple(int(v) for v in origin), side)


def query_rng(seed: int, side: int) -> np.random.Generator:
    """The per-side query stream: PCG64 seeded from SeedSequence([seed, side]).

    Every curve evaluates the same stream, so comparisons are paired; the
    split per side keeps streams independent and reproducible.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, side])))


def simulate(curves: Sequence[CurveSpec], sides: Iterable[int], queries: int,
             seed: int, wrap: bool = False,
             backend: str | None = None) -> list[ClusterStats]:
    """Mean cluster counts per (curve, side), over shared random query sets.

    Queries are drawn once per side and evaluated by every curve; output is
    ordered by curve then side and is bit-identical for identical inputs.
    """
    curves = list(curves)
    if not curves:
        return []
    if queries < 1:
        raise ValueError("need at least one query")
    d, n = curves[0].d, curves[0].n
    if any((c.d, c.n) != (d, n) for c in curves):
        raise ValueError("all curves must share (d, n)")
    sides = list(sides)
    for side in sides:
        if not 1 <= side <= (1 << n):
            raise ValueError(f"side {side} outside [1, 2^{n}]")
        if side ** d > MAX_QUERY_CELLS:
            raise ValueError(f"side {side} queries hold more than {MAX_QUERY_CELLS} cells")

    origins = {
        side: query_rng(seed, side).integers(
            0, (1 << n) - side + 1, size=(queries, d), dtype=np.int64)
        for side in sides
    }
    codecs = {spec.kind: spec.codec() for spec in curves}

    out = []
    for spec in curves:
        codec = codecs[spec.kind]
        for side in sides:
            counts = _batch_counts(codec, origins[side], side, wrap, backend)
            mean = float(np.mean(counts))
            stddev = float(np.std(counts, ddof=1)) if queries > 1 else 0.0
            out.append(ClusterStats(
                curve=spec.kind, d=d, n=n, side=side, queries=queries,
                seed=seed, mean=mean, stddev=stddev,
                stderr=stddev / math.sqrt(queries)))
    return out


def _batch_counts(codec, origins: np.ndarray, side: int, wrap: bool,
                  backend: str | None) -> np.ndarray:
    be = _backend.get_backend(backend)
    if getattr(be, "NAME", "") == "cython" and (
            codec.d * codec.n > _BITMAP_ND_MAX or not codec._batch_supported()):
        be = _backend.get_backend("python")
    return be.cube_cluster_counts(
        KIND_IDS[codec.kind], codec.d, codec.n, *codec._batch_tables(),
        np.ascontiguousarray(origins, dtype=np.int64), side, wrap)


def connectivity_check(points: Iterable[tuple[int, ...]]) -> tuple[bool, bool | None]:
    """(connected, simply_connected) flags for a finite cell set.

    Cells are adjacent when they differ by 1 in exactly one coordinate.
    The simply-connected check (no fully enclosed complement pockets) is
    implemented for d = 2 only; in higher dimensions it is reported for
    full boxes (trivially True) and None otherwise.
    """
    pts = set(tuple(int(v) for v in p) for p in points)
    if not pts:
        return (True, True)
    d = len(next(iter(pts)))
    if any(len(p) != d for p in pts):
        raise ValueError("points must share one dimension")

    connected = _is_connected(pts, d)
    lo = [min(p[i] for p in pts) for i in range(d)]
    hi = [max(p[i] for p in pts) for i in range(d)]
    volume = 1
    for i in range(d):
        volume *= hi[i] - lo[i] + 1
    is_box = volume == len(pts)

    if d != 2:
        return (connected, True if is_box else None)
    if is_box:
        return (connected, connected)
    return (connected, connected and not _has_hole_2d(pts, lo, hi))


def _is_connected(pts: set, d: int) -> bool:
    start = next(iter(pts))
    seen = {start}
    stack = [start]
    while stack:
        p = stack.pop()
        for i in range(d):
            for delta in (-1, 1):
                q = p[:i] + (p[i] + delta,) + p[i + 1:]
                if q in pts and q not in seen:
                    seen.add(q)
                    stack.append(q)
    return len(seen) == len(pts)


def _has_hole_2d(pts: set, lo, hi) -> bool:
    # Flood the complement from outside a 1-cell border; any unreached
    # complement cell is an enclosed pocket.
    x0, y0 = lo[0] - 1, lo[1] - 1
    x1, y1 = hi[0] + 1, hi[1] + 1
    seen = {(x0, y0)}
    stack = [(x0, y0)]
    while stack:
        x, y = stack.pop()
        for q in ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)):
            if (x0 <= q[0] <= x1 and y0 <= q[1] <= y1
                    and q not in pts and q not in seen):
                seen.add(q)
                stack.append(q)
    total = (x1 - x0 + 1) * (y1 - y0 + 1)
    return len(seen) + len(pts) != total


def write_stats_csv(stats: Sequence[ClusterStats], stream) -> None:
    """CSV per the published schema: header + one row per (curve, side)."""
    stream.write("curve,d,n,l,queries,seed,mean_clusters,stddev,stderr\n")
    for s in stats:
        stream.write(
            f"{s.curve},{s.d},{s.n},{s.side},{s.queries},{s.seed},"
            f"{s.mean!r},{s.stddev!r},{s.stderr!r}\n")
