"""Reference codecs: Z-order (Morton) and the Butz-Hilbert curve.

Both serve as comparison baselines for the H-curve in the clustering
simulation and the benchmarks. The Hilbert codec follows Skilling's
transpose formulation of the Butz algorithm; rank 0 sits at the all-zero
cell and consecutive ranks are L1-adjacent (non-cyclically).
"""

from __future__ import annotations

from ._codec import Codec


class ZCodec(Codec):
    """Morton order: the rank is simply the concatenated Z-order digits."""

    kind = "z"
    cyclic = False
    min_d = 1

    def encode(self, zdigits) -> int:
        digits = self.check_digits(zdigits)
        r = 0
        for a in digits:
            r = (r << self.d) | a
        return r

    def decode(self, rank: int) -> tuple[int, ...]:
        r = self.check_rank(rank)
        d, n = self.d, self.n
        mask = (1 << d) - 1
        return tuple((r >> (d * (n - 1 - j))) & mask for j in range(n))


class HilbertCodec(Codec):
    """d-dimensional Hilbert curve, Butz construction in transpose form.

    The rank's bit groups, read coarsest first, live interleaved across the
    axis words (axis 0 holds the most significant bit of each group); the
    transform between that form and coordinates is a Gray-code pass plus one
    rotate/exchange sweep per refinement level.
    """

    kind = "hilbert"
    cyclic = False
    min_d = 2

    def encode(self, zdigits) -> int:
        digits = self.check_digits(zdigits)
        d, n = self.d, self.n
        # digits -> per-axis coordinates, axis i in x[i]
        x = [0] * d
        for j, a in enumerate(digits):
            for i in range(d):
                x[i] |= ((a >> i) & 1) << (n - 1 - j)
        q = 1 << (n - 1)
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
        q = 1 << (n - 1)
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

    def decode(self, rank: int) -> tuple[int, ...]:
        r = self.check_rank(rank)
        d, n = self.d, self.n
        x = [0] * d
        for b in range(n):
            for i in range(d):
                x[i] |= ((r >> (b * d + (d - 1 - i))) & 1) << b
        t = x[d - 1] >> 1
        for i in range(d - 1, 0, -1):
            x[i] ^= x[i - 1]
        x[0] ^= t
        q = 2
        top = 1 << n
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
        # coordinates -> digits
        digits = []
        for j in range(n):
            a = 0
            for i in range(d):
                a |= ((x[i] >> (n - 1 - j)) & 1) << i
            digits.append(a)
        return tuple(digits)
