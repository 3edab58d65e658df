# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled batch kernels: codec hot loops and the cubic-query cluster counter.

Signatures mirror :mod:`hcurves._pure` exactly; lookup tables come in as
uint64 arrays prepared by the codec objects (empty where a curve needs none).
"""

import numpy as np

from libc.stdint cimport int64_t, uint8_t, uint64_t

ctypedef uint64_t u64
ctypedef int64_t i64

NAME = "cython"


# ------------------------------------------------------------ per-cell ops --

cdef inline u64 _transpose_digit(int d, int n, int j, const i64* c) noexcept nogil:
    cdef int i
    cdef u64 a = 0
    for i in range(d):
        a |= ((<u64>c[i] >> (n - 1 - j)) & 1) << i
    return a


cdef inline void _digits_to_coords(int d, int n, const u64* dig, i64* c) noexcept nogil:
    cdef int i, j
    for i in range(d):
        c[i] = 0
    for j in range(n):
        for i in range(d):
            c[i] |= (<i64>((dig[j] >> i) & 1)) << (n - 1 - j)


cdef inline u64 _z_enc(int d, int n, const i64* c) noexcept nogil:
    cdef int j
    cdef u64 r = 0
    for j in range(n):
        r = (r << d) | _transpose_digit(d, n, j, c)
    return r


cdef inline void _z_dec(int d, int n, u64 r, i64* c) noexcept nogil:
    cdef u64 dig[64]
    cdef u64 mask = ((<u64>1) << d) - 1
    cdef int j
    for j in range(n):
        dig[j] = (r >> (d * (n - 1 - j))) & mask
    _digits_to_coords(d, n, dig, c)


cdef inline u64 _h_enc(int d, int n, const u64* ginv_t, const u64* corner_t,
                       Py_ssize_t cstride, const i64* c) noexcept nogil:
    cdef u64 dig[64]
    cdef int i, j, m, shift
    cdef u64 r, a0, corner, off, modmask
    cdef bint odd = d & 1
    for j in range(n):
        dig[j] = _transpose_digit(d, n, j, c)
    r = ginv_t[dig[n - 1]]
    for i in range(n - 2, -1, -1):
        m = n - i
        shift = d * (m - 1)
        modmask = ((<u64>1) << shift) - 1
        a0 = dig[i]
        corner = corner_t[(m - 1) * cstride + a0]
        if odd and m == 2:
            off = (corner - r) & modmask
        else:
            off = (r - corner) & modmask
        r = (ginv_t[a0] << shift) | off
    return r


cdef inline void _h_dec(int d, int n, const u64* gray_t, const u64* corner_t,
                        Py_ssize_t cstride, u64 r, i64* c) noexcept nogil:
    cdef u64 dig[64]
    cdef int i, m, shift
    cdef u64 a0, corner, off, modmask
    cdef bint odd = d & 1
    for i in range(n - 1):
        m = n - i
        shift = d * (m - 1)
        modmask = ((<u64>1) << shift) - 1
        a0 = gray_t[r >> shift]
        dig[i] = a0
        off = r & modmask
        corner = corner_t[(m - 1) * cstride + a0]
        if odd and m == 2:
            r = (corner - off) & modmask
        else:
            r = (corner + off) & modmask
    dig[n - 1] = gray_t[r]
    _digits_to_coords(d, n, dig, c)


cdef inline u64 _hil_enc(int d, int n, const i64* c) noexcept nogil:
    cdef u64 x[64]
    cdef int i, b
    cdef u64 q, p, t, r
    for i in range(d):
        x[i] = <u64>c[i]
    q = (<u64>1) << (n - 1)
    while q > 1:
        p = q - 1
        for i in range(d):
            if x[i] & q:
                x[0] ^= p
            else:
                t = (x[0] ^ x[i]) & p
                x[0] ^= t
                x[i] ^= t
        q >>= 1
    for i in range(1, d):
        x[i] ^= x[i - 1]
    t = 0
    q = (<u64>1) << (n - 1)
    while q > 1:
        if x[d - 1] & q:
            t ^= q - 1
        q >>= 1
    for i in range(d):
        x[i] ^= t
    r = 0
    for b in range(n - 1, -1, -1):
        for i in range(d):
            r = (r << 1) | ((x[i] >> b) & 1)
    return r


cdef inline void _hil_dec(int d, int n, u64 r, i64* c) noexcept nogil:
    cdef u64 x[64]
    cdef int i, b
    cdef u64 q, p, t, top
    for i in range(d):
        x[i] = 0
    for b in range(n):
        for i in range(d):
            x[i] |= ((r >> (b * d + (d - 1 - i))) & 1) << b
    t = x[d - 1] >> 1
    for i in range(d - 1, 0, -1):
        x[i] ^= x[i - 1]
    x[0] ^= t
    q = 2
    top = (<u64>1) << n
    while q != top:
        p = q - 1
        for i in range(d - 1, -1, -1):
            if x[i] & q:
                x[0] ^= p
            else:
                t = (x[0] ^ x[i]) & p
                x[0] ^= t
                x[i] ^= t
        q <<= 1
    for i in range(d):
        c[i] = <i64>x[i]


# ------------------------------------------------------------ batch fronts --

def z_encode_many(int d, int n, gray_t, ginv_t, corner_t, i64[:, ::1] coords):
    cdef Py_ssize_t N = coords.shape[0], k
    out_np = np.empty(N, dtype=np.uint64)
    cdef u64[::1] out = out_np
    with nogil:
        for k in range(N):
            out[k] = _z_enc(d, n, &coords[k, 0])
    return out_np


def z_decode_many(int d, int n, gray_t, ginv_t, corner_t, u64[::1] ranks):
    cdef Py_ssize_t N = ranks.shape[0], k
    out_np = np.empty((N, d), dtype=np.int64)
    cdef i64[:, ::1] out = out_np
    with nogil:
        for k in range(N):
            _z_dec(d, n, ranks[k], &out[k, 0])
    return out_np


def h_encode_many(int d, int n, u64[::1] gray_t, u64[::1] ginv_t,
                  u64[:, ::1] corner_t, i64[:, ::1] coords):
    cdef Py_ssize_t N = coords.shape[0], k
    cdef Py_ssize_t cstride = corner_t.shape[1]
    out_np = np.empty(N, dtype=np.uint64)
    cdef u64[::1] out = out_np
    cdef const u64* ginv_p
    cdef const u64* corner_p
    if N == 0:
        return out_np
    ginv_p = &ginv_t[0]
    corner_p = &corner_t[0, 0]
    with nogil:
        for k in range(N):
            out[k] = _h_enc(d, n, ginv_p, corner_p, cstride, &coords[k, 0])
    return out_np


def h_decode_many(int d, int n, u64[::1] gray_t, u64[::1] ginv_t,
                  u64[:, ::1] corner_t, u64[::1] ranks):
    cdef Py_ssize_t N = ranks.shape[0], k
    cdef Py_ssize_t cstride = corner_t.shape[1]
    out_np = np.empty((N, d), dtype=np.int64)
    cdef i64[:, ::1] out = out_np
    cdef const u64* gray_p
    cdef const u64* corner_p
    if N == 0:
        return out_np
    gray_p = &gray_t[0]
    corner_p = &corner_t[0, 0]
    with nogil:
        for k in range(N):
            _h_dec(d, n, gray_p, corner_p, cstride, ranks[k], &out[k, 0])
    return out_np


def hilbert_encode_many(int d, int n, gray_t, ginv_t, corner_t, i64[:, ::1] coords):
    cdef Py_ssize_t N = coords.shape[0], k
    out_np = np.empty(N, dtype=np.uint64)
    cdef u64[::1] out = out_np
    with nogil:
        for k in range(N):
            out[k] = _hil_enc(d, n, &coords[k, 0])
    return out_np


def hilbert_decode_many(int d, int n, gray_t, ginv_t, corner_t, u64[::1] ranks):
    cdef Py_ssize_t N = ranks.shape[0], k
    out_np = np.empty((N, d), dtype=np.int64)
    cdef i64[:, ::1] out = out_np
    with nogil:
        for k in range(N):
            _hil_dec(d, n, ranks[k], &out[k, 0])
    return out_np


# ----------------------------------------------------------------- clusters --

def cube_cluster_counts(int kind, int d, int n, gray_t, u64[::1] ginv_t,
                        u64[:, ::1] corner_t, i64[:, ::1] origins, int ell,
                        bint wrap):
    """Cluster count per cubic query via a rank presence bitmap.

    A cluster boundary is a cell whose successor rank is absent from the
    query; with ``wrap`` the successor is taken cyclically. kind: 0 = Z,
    1 = Hilbert, 2 = H.
    """
    cdef int nd = n * d
    if nd > 26:
        raise ValueError("rank space too large for the bitmap cluster kernel")
    if ell < 1:
        raise ValueError("query side must be >= 1")
    cdef u64 size = (<u64>1) << nd
    cdef i64 ncells = 1
    cdef int i
    for i in range(d):
        ncells *= ell
    ranks_np = np.empty(ncells, dtype=np.uint64)
    bitmap_np = np.zeros(<i64>size + 1, dtype=np.uint8)
    counts_np = np.empty(origins.shape[0], dtype=np.int64)
    cdef u64[::1] ranks = ranks_np
    cdef uint8_t[::1] bitmap = bitmap_np
    cdef i64[::1] counts = counts_np
    cdef Py_ssize_t Q = origins.shape[0], q
    cdef Py_ssize_t cstride = corner_t.shape[1]
    cdef const u64* ginv_p = NULL
    cdef const u64* corner_p = NULL
    if kind == 2:
        ginv_p = &ginv_t[0]
        corner_p = &corner_t[0, 0]
    cdef i64 cell[64]
    cdef int idx[64]
    cdef u64 r, s, mask = size - 1
    cdef i64 c, runs
    with nogil:
        for q in range(Q):
            for i in range(d):
                idx[i] = 0
            for c in range(ncells):
                for i in range(d):
                    cell[i] = origins[q, i] + idx[i]
                if kind == 0:
                    r = _z_enc(d, n, cell)
                elif kind == 1:
                    r = _hil_enc(d, n, cell)
                else:
                    r = _h_enc(d, n, ginv_p, corner_p, cstride, cell)
                ranks[c] = r
                bitmap[r] = 1
                i = 0
                while i < d:
                    idx[i] += 1
                    if idx[i] < ell:
                        break
                    idx[i] = 0
                    i += 1
            runs = 0
            for c in range(ncells):
                s = ranks[c] + 1
                if wrap:
                    s &= mask
                if bitmap[s] == 0:
                    runs += 1
            if runs == 0:
                runs = 1
            for c in range(ncells):
                bitmap[ranks[c]] = 0
            counts[q] = runs
    return counts_np
