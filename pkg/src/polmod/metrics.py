"""Error counting and derived link statistics.

Counters form a commutative monoid under ``+`` so per-worker partial counts
merge in any order. The block bookkeeping is twofold: ``blocks_*`` treats a
block as errored when any bit in it differs, while ``payload_blocks_*``
looks only at the payload (symbol) bits. For schemes without a separate
control bit the two coincide; for the polarization-keyed scheme the payload
view is what the cross-polar robustness study plots, since the polarization
bit is undetectable by construction once the two polarizations carry the
same signal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

__all__ = [
    "ErrorCounters",
    "XpdSample",
    "xpd_db",
    "blsr",
    "gain_degradation",
    "accumulate",
]


@dataclass(frozen=True)
class ErrorCounters:
    bits_total: int = 0
    bits_error: int = 0
    hpq_total: int = 0
    hpq_error: int = 0
    lpq_total: int = 0
    lpq_error: int = 0
    blocks_total: int = 0
    blocks_error: int = 0
    payload_blocks_total: int = 0
    payload_blocks_error: int = 0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v < 0:
                raise ValueError(f"{f.name} must be >= 0")
        if self.bits_error > self.bits_total or self.blocks_error > self.blocks_total:
            raise ValueError("errors cannot exceed totals")
        if self.hpq_error > self.hpq_total or self.lpq_error > self.lpq_total:
            raise ValueError("errors cannot exceed totals")

    def __add__(self, other: "ErrorCounters") -> "ErrorCounters":
        return ErrorCounters(
            **{f.name: getattr(self, f.name) + getattr(other, f.name) for f in fields(self)}
        )

    # rate views; empty denominators read as 0 so queue-less schemes print 0
    @property
    def ber(self) -> float:
        return self.bits_error / self.bits_total if self.bits_total else 0.0

    @property
    def ber_hpq(self) -> float:
        return self.hpq_error / self.hpq_total if self.hpq_total else 0.0

    @property
    def ber_lpq(self) -> float:
        return self.lpq_error / self.lpq_total if self.lpq_total else 0.0

    @property
    def bler(self) -> float:
        return self.blocks_error / self.blocks_total if self.blocks_total else 0.0

    @property
    def payload_blsr(self) -> float:
        if not self.payload_blocks_total:
            return 0.0
        return 1.0 - self.payload_blocks_error / self.payload_blocks_total


@dataclass(frozen=True)
class XpdSample:
    """Received amplitude split of one channel use: co-polar vs cross-polar."""

    y_copolar_mag: float
    y_crosspolar_mag: float


def xpd_db(sample: XpdSample) -> float:
    """20 log10(co/cross); +inf when nothing leaks cross-polar."""
    if sample.y_crosspolar_mag == 0.0:
        return math.inf
    return 20.0 * math.log10(sample.y_copolar_mag / sample.y_crosspolar_mag)


def blsr(counters: ErrorCounters) -> float:
    """Block success rate, 1 - BLER."""
    if counters.blocks_total == 0:
        raise ValueError("no blocks counted")
    return 1.0 - counters.blocks_error / counters.blocks_total


def gain_degradation(blsr_at_xpd: float, blsr_reference: float) -> float:
    """Ratio of a scheme's block success rate to its ideal-isolation reference."""
    if blsr_reference <= 0:
        raise ValueError("reference block success rate must be > 0")
    return blsr_at_xpd / blsr_reference


def accumulate(
    counters: ErrorCounters,
    tx_bits,
    rx_bits,
    bits_per_use: int,
    hpq_bits_per_use: int = 0,
) -> ErrorCounters:
    """Fold one block of transmitted vs detected bits into the counters.

    The sequences are framed as consecutive channel uses of bits_per_use
    bits; within a use the first hpq_bits_per_use bits belong to the
    high-priority queue and the rest to the payload. The block is errored
    if any bit differs, the payload block if any payload bit differs.
    """
    tx = list(tx_bits)
    rx = list(rx_bits)
    if len(tx) != len(rx):
        raise ValueError("bit sequences differ in length")
    if bits_per_use < 1 or not 0 <= hpq_bits_per_use < bits_per_use + 1:
        raise ValueError("bad framing")
    if len(tx) % bits_per_use:
        raise ValueError("sequence length is not a whole number of uses")

    hpq_total = hpq_error = lpq_total = lpq_error = 0
    n_err = payload_err = 0
    for k, (a, b) in enumerate(zip(tx, rx)):
        is_hpq = (k % bits_per_use) < hpq_bits_per_use
        bad = a != b
        n_err += bad
        if hpq_bits_per_use:
            if is_hpq:
                hpq_total += 1
                hpq_error += bad
            else:
                lpq_total += 1
                lpq_error += bad
        if bad and not is_hpq:
            payload_err = 1

    delta = ErrorCounters(
        bits_total=len(tx),
        bits_error=n_err,
        hpq_total=hpq_total,
        hpq_error=hpq_error,
        lpq_total=lpq_total,
        lpq_error=lpq_error,
        blocks_total=1,
        blocks_error=int(n_err > 0),
        payload_blocks_total=1,
        payload_blocks_error=payload_err,
    )
    return counters + delta
