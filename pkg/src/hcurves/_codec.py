"""Shared codec machinery: validation, coordinate helpers, batch dispatch."""

from __future__ import annotations

import numpy as np

from . import _backend
from .bitops import from_zorder, to_zorder

MAX_RANK_BITS = 64

# Largest d for which the batch kernels build full 2^d lookup tables.
TABLE_D_MAX = 16


class Codec:
    """Base for the rank <-> cell codecs.

    Subclasses define ``kind``, ``cyclic``, and the scalar ``encode`` /
    ``decode`` on Z-order digit tuples. Batch variants run on the selected
    backend (compiled kernels when built, NumPy otherwise) and are verified
    against the scalar path in the test suite.
    """

    kind: str = ""
    cyclic: bool = False
    min_d: int = 1

    def __init__(self, d: int, n: int):
        if d < self.min_d:
            raise ValueError(f"{type(self).__name__} requires d >= {self.min_d}, got {d}")
        if n < 1:
            raise ValueError(f"depth must be >= 1, got {n}")
        if n * d > MAX_RANK_BITS:
            raise ValueError(f"n*d = {n * d} exceeds the {MAX_RANK_BITS}-bit rank limit")
        self.d = d
        self.n = n
        self.size = 1 << (n * d)

    # -- scalar interface ------------------------------------------------

    def encode(self, zdigits) -> int:
        raise NotImplementedError

    def decode(self, rank: int) -> tuple[int, ...]:
        raise NotImplementedError

    def encode_coords(self, coords) -> int:
        """Encode a cell given per-axis coordinates."""
        return self.encode(to_zorder(self.d, self.n, coords))

    def decode_coords(self, rank: int) -> tuple[int, ...]:
        """Decode a rank to per-axis coordinates."""
        return from_zorder(self.d, self.n, self.decode(rank))

    # -- batch interface -------------------------------------------------

    def encode_many(self, coords, backend: str | None = None) -> np.ndarray:
        """Encode an (N, d) array of coordinates to an (N,) uint64 rank array."""
        arr = self._check_coords(coords)
        be = _backend.get_backend(backend)
        fn = getattr(be, f"{self.kind}_encode_many", None)
        if fn is None or not self._batch_supported():
            return np.fromiter(
                (self.encode_coords(tuple(int(v) for v in row)) for row in arr),
                dtype=np.uint64, count=len(arr))
        return fn(self.d, self.n, *self._batch_tables(), arr)

    def decode_many(self, ranks, backend: str | None = None) -> np.ndarray:
        """Decode an (N,) rank array to an (N, d) int64 coordinate array."""
        arr = self._check_ranks(ranks)
        be = _backend.get_backend(backend)
        fn = getattr(be, f"{self.kind}_decode_many", None)
        if fn is None or not self._batch_supported():
            out = np.empty((len(arr), self.d), dtype=np.int64)
            for i, r in enumerate(arr):
                out[i] = self.decode_coords(int(r))
            return out
        return fn(self.d, self.n, *self._batch_tables(), arr)

    def _batch_supported(self) -> bool:
        return True

    def _batch_tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(gray, gray_inv, corner-rank) lookup tables; empty where unused."""
        return _EMPTY_TABLES

    # -- validation helpers ----------------------------------------------

    def check_digits(self, zdigits) -> tuple[int, ...]:
        digits = tuple(zdigits)
        if len(digits) != self.n:
            raise ValueError(f"expected {self.n} digits, got {len(digits)}")
        top = 1 << self.d
        for j, a in enumerate(digits):
            if not 0 <= a < top:
                raise ValueError(f"digit {j} = {a} outside [0, 2^{self.d})")
        return digits

    def check_rank(self, rank: int) -> int:
        if not 0 <= rank < self.size:
            raise ValueError(f"rank {rank} outside [0, {self.size})")
        return rank

    def _check_coords(self, coords) -> np.ndarray:
        arr = np.ascontiguousarray(coords, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != self.d:
            raise ValueError(f"expected an (N, {self.d}) coordinate array, got {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= (1 << self.n)):
            raise ValueError(f"coordinates outside [0, 2^{self.n})")
        return arr

    def _check_ranks(self, ranks) -> np.ndarray:
        arr = np.ascontiguousarray(ranks, dtype=np.uint64)
        if arr.ndim != 1:
            raise ValueError(f"expected a 1-d rank array, got shape {arr.shape}")
        if arr.size and int(arr.max()) >= self.size:
            raise ValueError(f"rank outside [0, {self.size})")
        return arr

    def __repr__(self):
        return f"{type(self).__name__}(d={self.d}, n={self.n})"


_EMPTY_TABLES = (
    np.empty(0, dtype=np.uint64),
    np.empty(0, dtype=np.uint64),
    np.empty((1, 0), dtype=np.uint64),
)
