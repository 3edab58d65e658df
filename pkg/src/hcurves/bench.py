"""Microbenchmarks for the codec hot paths.

Inputs are pre-generated outside the timed region; the timed region is one
tight pass over the whole batch plus an xor checksum of the outputs (which
also guards against dead-code elimination and is re-checked untimed). Times
come from a monotonic clock around the batch, not per call: single calls sit
well under timer resolution.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend
from .curves import CurveSpec

OPS = ("encode", "decode")

MIN_CALLS = 100_000

WARMUP_FRACTION = 0.1


@dataclass(frozen=True)
class BenchReport:
    curve: str
    op: str
    d: int
    n: int
    calls: int
    total_ns: int
    mean_ns: float
    checksum: int
    backend: str
    cpu_pinned: bool


def bench_codec(spec: CurveSpec, op: str, calls: int = 1_000_000, seed: int = 0,
                backend: str | None = None) -> BenchReport:
    """Time `calls` scalar operations driven as one batch; report mean ns/call."""
    if op not in OPS:
        raise ValueError(f"op must be one of {OPS}, got {op!r}")
    if calls < MIN_CALLS:
        raise ValueError(f"calls must be >= {MIN_CALLS} for a stable mean")
    codec = spec.codec()
    be = _backend.get_backend(backend)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, spec.d, spec.n])))
    if op == "encode":
        inputs = rng.integers(0, 1 << spec.n, size=(calls, spec.d), dtype=np.int64)
        run = lambda arr: codec.encode_many(arr, backend=be.NAME)
        fold = lambda out: int(np.bitwise_xor.reduce(out))
    else:
        inputs = rng.integers(0, codec.size, size=calls, dtype=np.uint64)
        run = lambda arr: codec.decode_many(arr, backend=be.NAME)
        fold = lambda out: int(np.bitwise_xor.reduce(out.view(np.uint64).ravel()))

    codec._batch_tables()  # corner caches populated before any timing
    warmup = max(1, int(calls * WARMUP_FRACTION))
    fold(run(inputs[:warmup]))

    prev_affinity = _pin_cpu()
    try:
        t0 = time.perf_counter_ns()
        checksum = fold(run(inputs))
        t1 = time.perf_counter_ns()
    finally:
        _unpin_cpu(prev_affinity)

    verify = fold(run(inputs))
    if verify != checksum:
        raise AssertionError(f"checksum drifted across runs: {verify} != {checksum}")
    total = t1 - t0
    return BenchReport(curve=spec.kind, op=op, d=spec.d, n=spec.n, calls=calls,
                       total_ns=total, mean_ns=total / calls, checksum=checksum,
                       backend=be.NAME, cpu_pinned=prev_affinity is not None)


def bench_table(specs: Sequence[CurveSpec], calls: int = 1_000_000, seed: int = 0,
                backend: str | None = None) -> list[BenchReport]:
    """bench_codec over every (spec, op) pair, in spec order."""
    return [bench_codec(spec, op, calls=calls, seed=seed, backend=backend)
            for spec in specs for op in OPS]


def write_bench_csv(reports: Sequence[BenchReport], stream) -> None:
    stream.write("curve,op,d,n,calls,mean_ns\n")
    for r in reports:
        stream.write(f"{r.curve},{r.op},{r.d},{r.n},{r.calls},{r.mean_ns!r}\n")


def render_bench_table(reports: Sequence[BenchReport]) -> str:
    """Aligned text table plus H/Hilbert mean-time ratios where both ran."""
    header = ("curve", "op", "d", "n", "calls", "mean ns/call", "backend")
    rows = [(r.curve, r.op, str(r.d), str(r.n), str(r.calls),
             f"{r.mean_ns:.1f}", r.backend) for r in reports]
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)))
    for op in OPS:
        h = [r for r in reports if r.curve == "h" and r.op == op]
        hil = [r for r in reports if r.curve == "hilbert" and r.op == op]
        if h and hil:
            lines.append(f"h/hilbert {op} mean ratio: {h[0].mean_ns / hil[0].mean_ns:.3f}")
    if reports and not reports[0].cpu_pinned:
        lines.append("note: CPU pinning unavailable on this platform; timings unpinned")
    return "\n".join(lines) + "\n"


def _pin_cpu():
    if hasattr(os, "sched_setaffinity"):
        try:
            prev = os.sched_getaffinity(0)
            os.sched_setaffinity(0, {min(prev)})
            return prev
        except OSError:
            return None
    return None


def _unpin_cpu(prev) -> None:
    if prev is not None:
        try:
            os.sched_setaffinity(0, prev)
        except OSError:
            pass
