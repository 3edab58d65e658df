"""Certification suites: codec vs. construction oracle plus structural checks.

These power the ``verify`` CLI subcommand and the acceptance tests. All
checks return (ok, detail) rather than raising, so callers can aggregate.
"""

from __future__ import annotations

import numpy as np

from .curves import make_codec
from .oracle import MAX_CELLS, build_cycle


def cyclic_equivalent(a, b) -> bool:
    """True when two sequences visit the same cycle, up to rotation and direction."""
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        i = b.index(a[0])
    except ValueError:
        return False
    if a == b[i:] + b[:i]:
        return True
    rb = b[::-1]
    i = rb.index(a[0])
    return a == rb[i:] + rb[:i]


def traversal(codec, backend: str | None = None) -> np.ndarray:
    """All cells in rank order, as an (size, d) int64 array."""
    ranks = np.arange(codec.size, dtype=np.uint64)
    return codec.decode_many(ranks, backend=backend)


def check_oracle_equivalence(d: int, n: int, backend: str | None = None) -> tuple[bool, str]:
    """Codec traversal == oracle cycle, as cyclic sequences up to direction."""
    oracle = build_cycle(d, n)
    cells = traversal(make_codec("h", d, n), backend=backend)
    seq = [tuple(int(v) for v in row) for row in cells]
    ok = cyclic_equivalent(seq, oracle)
    return ok, f"h({d},{n}) vs oracle over {len(oracle)} cells"


def check_round_trip(codec, samples: int | None = None, seed: int = 0,
                     backend: str | None = None) -> tuple[bool, str]:
    """decode then encode is the identity (exhaustive, or sampled when huge)."""
    if samples is None:
        if codec.size > MAX_CELLS:
            raise ValueError("exhaustive round-trip beyond 2^20 ranks; pass samples")
        ranks = np.arange(codec.size, dtype=np.uint64)
        scope = f"exhaustive {codec.size}"
    else:
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, codec.d, codec.n])))
        ranks = rng.integers(0, codec.size, size=samples, dtype=np.uint64)
        scope = f"{samples} samples"
    coords = codec.decode_many(ranks, backend=backend)
    back = codec.encode_many(coords, backend=backend)
    ok = bool(np.array_equal(back, ranks))
    if ok and samples is None:
        # decode must also cover every cell exactly once
        ok = int(np.unique(coords.view(np.int64).reshape(codec.size, codec.d), axis=0).shape[0]) == codec.size
    return ok, f"{codec.kind}({codec.d},{codec.n}) round-trip, {scope}"


def check_adjacency(codec, samples: int | None = None, seed: int = 0,
                    backend: str | None = None) -> tuple[bool, str]:
    """Consecutive ranks decode to L1-adjacent cells (wrap included if cyclic)."""
    if samples is None:
        if codec.size > MAX_CELLS:
            raise ValueError("exhaustive adjacency beyond 2^20 ranks; pass samples")
        cells = traversal(codec, backend=backend)
        steps = np.abs(np.diff(cells, axis=0)).sum(axis=1)
        ok = bool(np.all(steps == 1))
        if ok and codec.cyclic:
            ok = int(np.abs(cells[0] - cells[-1]).sum()) == 1
        scope = f"exhaustive {codec.size}"
    else:
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, codec.d, codec.n, 1])))
        r = rng.integers(0, codec.size, size=samples, dtype=np.uint64)
        if not codec.cyclic:
            r = np.minimum(r, np.uint64(codec.size - 2))
        nxt = (r + np.uint64(1)) % np.uint64(codec.size)
        a = codec.decode_many(r, backend=backend)
        b = codec.decode_many(nxt, backend=backend)
        ok = bool(np.all(np.abs(a - b).sum(axis=1) == 1))
        scope = f"{samples} samples"
    mode = "cyclic" if codec.cyclic else "linear"
    return ok, f"{codec.kind}({codec.d},{codec.n}) {mode} adjacency, {scope}"


def depth_runs(codec, k: int, backend: str | None = None) -> tuple[bool, list[int]]:
    """Check every depth-k cell forms one contiguous rank run; return run order.

    Runs are cyclic for cyclic curves. The returned list holds the depth-k
    block ranks (Z-order) in traversal order, one entry per run.
    """
    if not 1 <= k < codec.n:
        raise ValueError(f"depth k must be in [1, {codec.n}), got {k}")
    d, n = codec.d, codec.n
    cells = traversal(codec, backend=backend)
    blocks = cells >> (n - k)
    weights = np.int64(1) << (np.arange(d, dtype=np.int64) * k)
    ids = blocks @ weights
    change = np.nonzero(np.diff(ids))[0] + 1
    starts = np.concatenate(([0], change))
    lengths = np.diff(np.concatenate((starts, [len(ids)])))
    order = [int(ids[s]) for s in starts]
    run_len = 1 << (d * (n - k))
    if codec.cyclic and len(order) > 1 and order[0] == order[-1]:
        # the run through rank 0 wraps; merge its two pieces
        lengths[0] += lengths[-1]
        lengths = lengths[:-1]
        order = order[:-1]
    ok = bool(np.all(lengths == run_len)) and len(order) == 1 << (d * k) \
        and len(set(order)) == len(order)
    return ok, order


def check_self_similarity(d: int, n: int, k: int, backend: str | None = None) -> tuple[bool, str]:
    """Depth-k cells of the d,n H-curve: contiguous runs in the H(d,k) order."""
    codec = make_codec("h", d, n)
    ok, order = depth_runs(codec, k, backend=backend)
    if ok:
        coarse = make_codec("h", d, k)
        expected = []
        for r in range(coarse.size):
            coords = coarse.decode_coords(r)
            expected.append(sum(c << (i * k) for i, c in enumerate(coords)))
        ok = cyclic_equivalent(order, expected)
    return ok, f"h({d},{n}) depth-{k} cells traverse as h({d},{k})"


def run_suites(d: int, n: int, backend: str | None = None) -> list[tuple[str, bool, str]]:
    """The verification battery for one (d, n): returns (suite, ok, detail) rows."""
    results = []
    results.append(("oracle-equivalence", *check_oracle_equivalence(d, n, backend=backend)))
    for kind in ("z", "hilbert", "h"):
        codec = make_codec(kind, d, n)
        results.append(("round-trip", *check_round_trip(codec, backend=backend)))
    for kind in ("hilbert", "h"):
        codec = make_codec(kind, d, n)
        results.append(("adjacency", *check_adjacency(codec, backend=backend)))
    for k in range(1, n):
        results.append(("self-similarity", *check_self_similarity(d, n, k, backend=backend)))
    return results
