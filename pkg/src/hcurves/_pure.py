"""Vectorized NumPy implementations of the batch kernels.

Mirrors the compiled ``_kernels`` module function-for-function so either can
serve as the backend. All rank arithmetic stays inside uint64 (n*d <= 64 by
the codec contract); subtraction wrap-around is intentional and masked.
"""

from __future__ import annotations

import numpy as np

NAME = "python"

_U1 = np.uint64(1)


def _digits(d: int, n: int, coords: np.ndarray) -> np.ndarray:
    """(N, d) int64 coordinates -> (n, N) uint64 Z-order digits."""
    cols = coords.T.astype(np.uint64, copy=False)
    digs = np.zeros((n, coords.shape[0]), dtype=np.uint64)
    for j in range(n):
        js = np.uint64(n - 1 - j)
        for i in range(d):
            digs[j] |= ((cols[i] >> js) & _U1) << np.uint64(i)
    return digs


def _coords(d: int, n: int, digs: np.ndarray) -> np.ndarray:
    """(n, N) uint64 digits -> (N, d) int64 coordinates."""
    out = np.zeros((digs.shape[1], d), dtype=np.uint64)
    for j in range(n):
        js = np.uint64(n - 1 - j)
        for i in range(d):
            out[:, i] |= ((digs[j] >> np.uint64(i)) & _U1) << js
    return out.astype(np.int64)


# ---------------------------------------------------------------- Z-order --

def z_encode_many(d, n, gray_t, ginv_t, corner_t, coords):
    digs = _digits(d, n, coords)
    r = digs[0].copy()
    for j in range(1, n):
        r = (r << np.uint64(d)) | digs[j]
    return r


def z_decode_many(d, n, gray_t, ginv_t, corner_t, ranks):
    mask = np.uint64((1 << d) - 1)
    digs = np.empty((n, ranks.shape[0]), dtype=np.uint64)
    for j in range(n):
        digs[j] = (ranks >> np.uint64(d * (n - 1 - j))) & mask
    return _coords(d, n, digs)


# ----------------------------------------------------------------- H-curve --

def h_encode_many(d, n, gray_t, ginv_t, corner_t, coords):
    digs = _digits(d, n, coords)
    r = ginv_t[digs[n - 1]]
    odd = bool(d & 1)
    for i in range(n - 2, -1, -1):
        m = n - i
        shift = np.uint64(d * (m - 1))
        modmask = np.uint64((1 << (d * (m - 1))) - 1)
        a0 = digs[i]
        corner = corner_t[m - 1][a0]
        if odd and m == 2:
            off = (corner - r) & modmask
        else:
            off = (r - corner) & modmask
        r = (ginv_t[a0] << shift) | off
    return r


def h_decode_many(d, n, gray_t, ginv_t, corner_t, ranks):
    r = ranks.astype(np.uint64, copy=True)
    digs = np.empty((n, r.shape[0]), dtype=np.uint64)
    odd = bool(d & 1)
    for i in range(n - 1):
        m = n - i
        shift = np.uint64(d * (m - 1))
        modmask = np.uint64((1 << (d * (m - 1))) - 1)
        a0 = gray_t[r >> shift]
        digs[i] = a0
        off = r & modmask
        corner = corner_t[m - 1][a0]
        if odd and m == 2:
            r = (corner - off) & modmask
        else:
            r = (corner + off) & modmask
    digs[n - 1] = gray_t[r]
    return _coords(d, n, digs)


# ----------------------------------------------------------------- Hilbert --

def hilbert_encode_many(d, n, gray_t, ginv_t, corner_t, coords):
    x = coords.T.astype(np.uint64).copy()
    q = 1 << (n - 1)
    while q > 1:
        qq = np.uint64(q)
        p = np.uint64(q - 1)
        for i in range(d):
            high = (x[i] & qq) != 0
            x[0][high] ^= p
            t = (x[0] ^ x[i]) & p
            t[high] = 0
            x[0] ^= t
            x[i] ^= t
        q >>= 1
    for i in range(1, d):
        x[i] ^= x[i - 1]
    t = np.zeros_like(x[0])
    q = 1 << (n - 1)
    while q > 1:
        t[(x[d - 1] & np.uint64(q)) != 0] ^= np.uint64(q - 1)
        q >>= 1
    x ^= t
    r = np.zeros_like(x[0])
    for b in range(n - 1, -1, -1):
        bb = np.uint64(b)
        for i in range(d):
            r = (r << _U1) | ((x[i] >> bb) & _U1)
    return r


def hilbert_decode_many(d, n, gray_t, ginv_t, corner_t, ranks):
    N = ranks.shape[0]
    x = np.zeros((d, N), dtype=np.uint64)
    for b in range(n):
        for i in range(d):
            x[i] |= ((ranks >> np.uint64(b * d + (d - 1 - i))) & _U1) << np.uint64(b)
    t = x[d - 1] >> _U1
    for i in range(d - 1, 0, -1):
        x[i] ^= x[i - 1]
    x[0] ^= t
    q = 2
    top = 1 << n
    while q != top:
        qq = np.uint64(q)
        p = np.uint64(q - 1)
        for i in range(d - 1, -1, -1):
            high = (x[i] & qq) != 0
            x[0][high] ^= p
            t = (x[0] ^ x[i]) & p
            t[high] = 0
            x[0] ^= t
            x[i] ^= t
        q <<= 1
    return x.T.astype(np.int64)


# ---------------------------------------------------------------- clusters --

_ENCODERS = {0: z_encode_many, 1: hilbert_encode_many, 2: h_encode_many}


def cube_cluster_counts(kind, d, n, gray_t, ginv_t, corner_t, origins, ell, wrap):
    """Cluster count per cubic query: encode all cells, sort, count rank gaps."""
    encode = _ENCODERS[kind]
    offsets = np.stack(
        [g.ravel() for g in np.meshgrid(*([np.arange(ell)] * d), indexing="ij")],
        axis=1,
    ).astype(np.int64)
    size = 1 << (d * n)
    counts = np.empty(origins.shape[0], dtype=np.int64)
    for qi in range(origins.shape[0]):
        cells = origins[qi][None, :] + offsets
        ranks = encode(d, n, gray_t, ginv_t, corner_t, cells)
        ranks.sort()
        runs = 1 + int(np.count_nonzero(np.diff(ranks) > _U1))
        if (wrap and runs > 1
                and ranks[0] == 0 and int(ranks[-1]) == size - 1):
            runs -= 1
        counts[qi] = runs
    return counts
