"""Curve registry: names, specs and codec construction."""

from __future__ import annotations

from dataclasses import dataclass

from .hcurve import HCodec
from .reference import HilbertCodec, ZCodec

KINDS = ("z", "hilbert", "h")

_CODECS = {"z": ZCodec, "hilbert": HilbertCodec, "h": HCodec}

# Numeric ids used by the batch cluster kernels.
KIND_IDS = {"z": 0, "hilbert": 1, "h": 2}


@dataclass(frozen=True)
class CurveSpec:
    """One codec instance: curve kind, dimension d, depth n."""

    kind: str
    d: int
    n: int

    def __post_init__(self):
        if self.kind not in _CODECS:
            raise ValueError(f"unknown curve kind {self.kind!r}; expected one of {KINDS}")

    def codec(self):
        return make_codec(self.kind, self.d, self.n)


def make_codec(kind: str, d: int, n: int):
    """Instantiate the codec for a curve kind ('z', 'hilbert' or 'h')."""
    try:
        cls = _CODECS[kind.lower()]
    except KeyError:
        raise ValueError(f"unknown curve kind {kind!r}; expected one of {KINDS}") from None
    return cls(d, n)
