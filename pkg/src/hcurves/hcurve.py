"""Cyclic H-curve codec.

The curve chains the 2^d half-cube cycles into one cycle through a local
rewiring inside the central 4x2x...x2 parallelepiped, recursively down to
unit cells. No half-cube is rotated or reflected, so encode/decode reduce to
an O(n) loop over Z-order digits: at each level the sub-cube digit fixes the
top rank bits via the inverse Gray code, and the offset inside the sub-cube
is the inner rank shifted by the memoized rank of the sub-cube's entry
corner (negated at the single level where the traversal direction flips).

Every rule here that the construction leaves ambiguous is pinned by exact
equivalence with :func:`hcurves.oracle.build_cycle`, the graph-level
construction executed literally.
"""

from __future__ import annotations

import threading

from ._codec import Codec
from .bitops import from_zorder, gray, gray_inv, parity


def reversal_applies(d: int, n: int) -> bool:
    """True iff the depth-n traversal runs opposite to its sub-cube orientation.

    Happens only for odd d at n = 2; everywhere else directions agree.
    """
    return bool(d & 1) and n == 2


def reverse_rank(d: int, m: int, rank: int) -> int:
    """Direction-reversing rank map ``(-1 - rank) mod 2^(d*m)``."""
    return (-1 - rank) % (1 << (d * m))


def entry_corner(d: int, m: int, alpha: int) -> tuple[int, ...]:
    """Digits of the first cell visited inside the half-cube with digit alpha.

    All m digits equal the complement of alpha, except the last one whose
    lowest bit is flipped when ``parity(alpha)`` is even (the curve enters the
    half-cube through the central parallelepiped, on the axis-0 neighbour side
    exactly for even-parity digits). Certified against the cycle oracle.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if m < 1:
        raise ValueError(f"depth must be >= 1, got {m}")
    if not 0 <= alpha < (1 << d):
        raise ValueError(f"alpha = {alpha} outside [0, 2^{d})")
    ab = alpha ^ ((1 << d) - 1)
    return (ab,) * (m - 1) + (ab ^ 1 ^ parity(alpha),)


class HCodec(Codec):
    """Encode/decode for the H-curve at dimension d, depth n (n*d <= 64).

    Entry-corner ranks are cached lazily; lookups are lock-free and inserts
    are synchronized and idempotent, so one instance may serve many threads.
    """

    kind = "h"
    cyclic = True
    min_d = 2

    def __init__(self, d: int, n: int):
        super().__init__(d, n)
        self._mask = (1 << d) - 1
        self._corners: dict[tuple[int, int], int] = {}
        self._lock = threading.Lock()
        self._tables = None

    # -- corner cache ------------------------------------------------------

    def corner_rank(self, m: int, alpha: int) -> int:
        """Rank of ``entry_corner(d, m, alpha)`` along the depth-m curve."""
        try:
            return self._corners[m, alpha]
        except KeyError:
            with self._lock:
                self._fill_corners(m, alpha)
            return self._corners[m, alpha]

    def _fill_corners(self, m: int, alpha: int) -> None:
        # Bottom-up over depths; each level needs the (alpha, ~alpha) pair
        # one level down. Idempotent, call under self._lock.
        d, mask = self.d, self._mask
        corners = self._corners
        pair = (alpha, alpha ^ mask)
        for a in pair:
            if (1, a) not in corners:
                corners[1, a] = gray_inv(d, (a ^ mask) ^ 1 ^ parity(a))
        for mm in range(2, m + 1):
            shift = d * (mm - 1)
            modmask = (1 << shift) - 1
            rev = reversal_applies(d, mm)
            for a in pair:
                if (mm, a) in corners:
                    continue
                ab = a ^ mask
                inner = corners[mm - 1, a]
                corner = corners[mm - 1, ab]
                off = (corner - inner) & modmask if rev else (inner - corner) & modmask
                corners[mm, a] = (gray_inv(d, ab) << shift) | off

    # -- scalar codec --------------------------------------------------------

    def encode(self, zdigits) -> int:
        digits = self.check_digits(zdigits)
        d, n = self.d, self.n
        r = gray_inv(d, digits[n - 1])
        for i in range(n - 2, -1, -1):
            m = n - i
            shift = d * (m - 1)
            modmask = (1 << shift) - 1
            a0 = digits[i]
            corner = self.corner_rank(m - 1, a0)
            if reversal_applies(d, m):
                off = (corner - r) & modmask
            else:
                off = (r - corner) & modmask
            r = (gray_inv(d, a0) << shift) | off
        return r

    def decode(self, rank: int) -> tuple[int, ...]:
        r = self.check_rank(rank)
        d, n = self.d, self.n
        digits = []
        for i in range(n - 1):
            m = n - i
            shift = d * (m - 1)
            modmask = (1 << shift) - 1
            a0 = gray(d, r >> shift)
            digits.append(a0)
            off = r & modmask
            corner = self.corner_rank(m - 1, a0)
            if reversal_applies(d, m):
                r = (corner - off) & modmask
            else:
                r = (corner + off) & modmask
        digits.append(gray(d, r))
        return tuple(digits)

    # -- batch support -------------------------------------------------------

    def _batch_supported(self) -> bool:
        return self.d <= 16

    def _batch_tables(self):
        if self._tables is None:
            import numpy as np

            d, n = self.d, self.n
            with self._lock:
                for a in range(1 << d):
                    self._fill_corners(n - 1, a)
                if self._tables is None:
                    gray_t = np.array([gray(d, k) for k in range(1 << d)], dtype=np.uint64)
                    ginv_t = np.array([gray_inv(d, x) for x in range(1 << d)], dtype=np.uint64)
                    corner_t = np.zeros((max(n, 2), 1 << d), dtype=np.uint64)
                    for m in range(1, n):
                        for a in range(1 << d):
                            corner_t[m, a] = self._corners[m, a]
                    self._tables = (gray_t, ginv_t, corner_t)
        return self._tables


def neighbors_step(codec, rank: int) -> int:
    """L1 distance between the cells at rank and at (rank + 1) mod size."""
    a = from_zorder(codec.d, codec.n, codec.decode(rank))
    b = from_zorder(codec.d, codec.n, codec.decode((rank + 1) % codec.size))
    return sum(abs(x - y) for x, y in zip(a, b))
