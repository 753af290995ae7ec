"""Symbol alphabets with Gray bit labels and unit average energy.

Symbol index convention: index i carries the bit pattern of i, most
significant bit first. points[i] is therefore the point labeled by the
MSB-first bits of i, which makes bit mapping a table lookup and keeps the
index <-> label relation trivial everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Constellation",
    "make_constellation",
    "map_bits",
    "demap_hard",
    "bits_to_index",
    "index_to_bits",
]


def bits_to_index(bits) -> int:
    """Pack a bit sequence into an integer, MSB first."""
    out = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError("bits must be 0 or 1")
        out = (out << 1) | int(b)
    return out


def index_to_bits(index: int, width: int) -> tuple:
    """Unpack an integer into `width` bits, MSB first."""
    if index < 0 or index >= (1 << width):
        raise ValueError(f"index {index} out of range for {width} bits")
    return tuple((index >> (width - 1 - k)) & 1 for k in range(width))


@dataclass(frozen=True)
class Constellation:
    name: str
    bits_per_symbol: int
    points: np.ndarray = field(repr=False)  # (2^b,) complex128, E|s|^2 = 1
    labels: np.ndarray = field(repr=False)  # (2^b, b) uint8, row i = bits of i

    @property
    def size(self) -> int:
        return self.points.shape[0]

    # bit-difference lookup used by the error counters: hamming[i, j] is the
    # number of label bits on which symbols i and j disagree
    @property
    def hamming(self) -> np.ndarray:
        diff = self.labels[:, None, :] != self.labels[None, :, :]
        return diff.sum(-1).astype(np.int64)


# Gray-labeled per-axis amplitude levels: level_by_label[v] is the level
# whose label is the bit pattern v. Walking the levels in amplitude order
# visits labels in Gray-code order (one bit flips per step).
_AXIS_LEVELS = {
    1: (+1.0, -1.0),                  # 0 -> +1, 1 -> -1
    2: (-3.0, -1.0, +3.0, +1.0),      # 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3
}


def _axis_level(label_bits: int, nbits: int) -> float:
    return _AXIS_LEVELS[nbits][label_bits]


def make_constellation(kind: str) -> Constellation:
    """Build one of the supported alphabets: bpsk, qpsk, qam16."""
    kind = kind.lower()
    if kind == "bpsk":
        b, split = 1, (1, 0)
    elif kind == "qpsk":
        b, split = 2, (1, 1)
    elif kind == "qam16":
        b, split = 4, (2, 2)
    else:
        raise ValueError(f"unsupported constellation kind: {kind!r}")

    bi, bq = split
    pts = np.empty(1 << b, dtype=complex)
    for i in range(1 << b):
        ibits = i >> bq
        qbits = i & ((1 << bq) - 1)
        re = _axis_level(ibits, bi)
        im = _axis_level(qbits, bq) if bq else 0.0
        pts[i] = re + 1j * im
    pts /= np.sqrt(np.mean(np.abs(pts) ** 2))

    labels = np.array([index_to_bits(i, b) for i in range(1 << b)], dtype=np.uint8)
    return Constellation(name=kind, bits_per_symbol=b, points=pts, labels=labels)


def map_bits(cst: Constellation, bits) -> complex:
    """Map a b-bit pattern (MSB first) to its constellation point."""
    bits = tuple(bits)
    if len(bits) != cst.bits_per_symbol:
        raise ValueError(
            f"expected {cst.bits_per_symbol} bits, got {len(bits)}"
        )
    return complex(cst.points[bits_to_index(bits)])


def demap_hard(cst: Constellation, z: complex):
    """Nearest constellation point to z; ties go to the lowest index.

    Returns (symbol index, bit label).
    """
    d = np.abs(cst.points - z) ** 2
    idx = int(np.argmin(d))  # argmin takes the first minimum, so ties -> lowest index
    return idx, tuple(int(t) for t in cst.labels[idx])
