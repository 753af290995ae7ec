"""Transmit-side encoders: bits -> complex 2-vectors per channel use.

Four schemes share the same radiated energy (1 per channel use):

* pmod    b+1 bits/use: first bit picks the polarization, the rest the symbol
* single  b   bits/use: fixed polarization 0
* ostbc   b   bits/use: Alamouti pair across polarization and time, power 1/2 per branch
* vblast  2b  bits/use: two independent symbols, power 1/2 per branch

Framing is MSB-first everywhere; for pmod the polarization bit is the most
significant bit of the word (it rides the most protected level of the
hierarchy, see the priority-queue split in metrics).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .constellation import Constellation, bits_to_index, map_bits

__all__ = [
    "SchemeKind",
    "TxWord",
    "bits_per_use",
    "encode_pmod",
    "encode_single",
    "encode_ostbc",
    "encode_vblast",
    "se_gain",
]


class SchemeKind(Enum):
    PMOD = "pmod"
    SINGLE = "single"
    OSTBC = "ostbc"
    VBLAST = "vblast"


def bits_per_use(kind: SchemeKind, bits_per_symbol: int) -> int:
    b = bits_per_symbol
    return {
        SchemeKind.PMOD: b + 1,
        SchemeKind.SINGLE: b,
        SchemeKind.OSTBC: b,
        SchemeKind.VBLAST: 2 * b,
    }[kind]


@dataclass(frozen=True)
class TxWord:
    c: int  # polarization index of the nonzero component
    symbol_index: int
    x: np.ndarray  # (2,) complex transmit vector


def encode_pmod(bits, cst: Constellation) -> TxWord:
    """First bit selects the polarization, remaining b bits the symbol.

    x = (1-c, c)^T * s: exactly one component is nonzero and equals s.
    """
    bits = tuple(bits)
    if len(bits) != cst.bits_per_symbol + 1:
        raise ValueError(f"expected {cst.bits_per_symbol + 1} bits, got {len(bits)}")
    c = int(bits[0])
    s = map_bits(cst, bits[1:])
    x = np.zeros(2, dtype=complex)
    x[c] = s
    return TxWord(c=c, symbol_index=bits_to_index(bits[1:]), x=x)


def encode_single(bits, cst: Constellation) -> TxWord:
    """Fixed polarization 0; the b bits select the symbol."""
    bits = tuple(bits)
    if len(bits) != cst.bits_per_symbol:
        raise ValueError(f"expected {cst.bits_per_symbol} bits, got {len(bits)}")
    s = map_bits(cst, bits)
    return TxWord(c=0, symbol_index=bits_to_index(bits), x=np.array([s, 0j]))


def encode_ostbc(bits, cst: Constellation):
    """Alamouti pair over two channel uses, half power per branch.

    Use 1 sends (s1, s2)/sqrt(2), use 2 sends (-s2*, s1*)/sqrt(2); the
    channel is assumed constant across the pair.
    """
    bits = tuple(bits)
    b = cst.bits_per_symbol
    if len(bits) != 2 * b:
        raise ValueError(f"expected {2 * b} bits, got {len(bits)}")
    s1 = map_bits(cst, bits[:b])
    s2 = map_bits(cst, bits[b:])
    x1 = np.array([s1, s2]) / np.sqrt(2.0)
    x2 = np.array([-np.conj(s2), np.conj(s1)]) / np.sqrt(2.0)
    return x1, x2


def encode_vblast(bits, cst: Constellation) -> np.ndarray:
    """Two independent symbols multiplexed over the polarizations."""
    bits = tuple(bits)
    b = cst.bits_per_symbol
    if len(bits) != 2 * b:
        raise ValueError(f"expected {2 * b} bits, got {len(bits)}")
    s1 = map_bits(cst, bits[:b])
    s2 = map_bits(cst, bits[b:])
    return np.array([s1, s2]) / np.sqrt(2.0)


def se_gain(se: float) -> float:
    """Relative spectral-efficiency gain of adding the polarization bit: 1 + 1/SE."""
    if se <= 0:
        raise ValueError("spectral efficiency must be > 0")
    return 1.0 + 1.0 / se
