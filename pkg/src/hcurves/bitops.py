"""Gray-code arithmetic and Z-order coordinate transposition.

Bit conventions used throughout the package:

* axis 0 maps to bit 0 (least significant) of every Z-order digit;
* digit 0 is the coarsest one, i.e. it holds the most significant bit of
  every coordinate.

So for coordinates ``a_0..a_{d-1}`` of ``n`` bits each, bit ``j`` of ``a_i``
equals bit ``i`` of digit ``n-1-j``.
"""

from __future__ import annotations

from dataclasses import dataclass


def gray(d: int, k: int) -> int:
    """d-bit reflected Gray code ``k ^ (k >> 1)``, a bijection on {0..2^d-1}."""
    _check_word(d, k, "k")
    return k ^ (k >> 1)


def gray_inv(d: int, x: int) -> int:
    """Inverse of :func:`gray`: the prefix-xor of x's bits, msb first."""
    _check_word(d, x, "x")
    s = 1
    while s < d:
        x ^= x >> s
        s <<= 1
    return x


def parity(x: int) -> int:
    """1 if x has an odd number of set bits, else 0."""
    return x.bit_count() & 1


def to_zorder(d: int, n: int, coords) -> tuple[int, ...]:
    """Transpose per-axis coordinates into n Z-order digits of d bits each."""
    coords = tuple(coords)
    if len(coords) != d:
        raise ValueError(f"expected {d} coordinates, got {len(coords)}")
    top = 1 << n
    for i, a in enumerate(coords):
        if not 0 <= a < top:
            raise ValueError(f"coordinate {i} = {a} outside [0, 2^{n})")
    return tuple(
        sum(((coords[i] >> (n - 1 - j)) & 1) << i for i in range(d))
        for j in range(n)
    )


def from_zorder(d: int, n: int, zdigits) -> tuple[int, ...]:
    """Inverse of :func:`to_zorder`: digits back to per-axis coordinates."""
    zdigits = tuple(zdigits)
    if len(zdigits) != n:
        raise ValueError(f"expected {n} digits, got {len(zdigits)}")
    top = 1 << d
    for j, a in enumerate(zdigits):
        if not 0 <= a < top:
            raise ValueError(f"digit {j} = {a} outside [0, 2^{d})")
    return tuple(
        sum(((zdigits[j] >> i) & 1) << (n - 1 - j) for j in range(n))
        for i in range(d)
    )


@dataclass(frozen=True)
class GridPoint:
    """A cell of the 2^n grid in d dimensions, in both coordinate systems."""

    d: int
    n: int
    coords: tuple[int, ...]
    zdigits: tuple[int, ...]

    @classmethod
    def from_coords(cls, d: int, n: int, coords) -> "GridPoint":
        coords = tuple(coords)
        return cls(d, n, coords, to_zorder(d, n, coords))

    @classmethod
    def from_zdigits(cls, d: int, n: int, zdigits) -> "GridPoint":
        zdigits = tuple(zdigits)
        return cls(d, n, from_zorder(d, n, zdigits), zdigits)


def _check_word(d: int, value: int, name: str) -> None:
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if not 0 <= value < (1 << d):
        raise ValueError(f"{name} = {value} outside [0, 2^{d})")
