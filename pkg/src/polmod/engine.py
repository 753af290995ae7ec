"""Monte Carlo sweep engine.

Work is cut into fixed-size chunks of fading blocks. Each chunk draws its
randomness from a counter-based stream keyed by (master seed, point id,
chunk index), so a chunk's error counts depend only on those three numbers
and never on which process ran it or in what order. Chunks are merged in
index order; with the stopping rule checked between fixed-size rounds the
resulting counters, and therefore the CSV, are byte-identical for any
worker count.

Per-point stream ids are the low 64 bits of a SHA-256 over the point's
label, so adding or removing grid points never shifts the noise of the
others.

Chunk-internal draw order (load-bearing for reproducibility): channel
realizations first, then data indices (polarization bits before symbol
indices where applicable, first stream before second), then the noise.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .channel import ChannelConfig, NoiseConfig, channel_blocks
from .constellation import Constellation, make_constellation
from .detectors import mld_batch, nod_batch, ostbc_batch, single_batch, vblast_batch
from .metrics import ErrorCounters
from .numerics import RngStream, standard_complex_gaussian
from .schemes import SchemeKind, bits_per_use

__all__ = [
    "SCHEME_LABELS",
    "CSV_COLUMNS",
    "StopRule",
    "SweepConfig",
    "SweepRecord",
    "point_stream_id",
    "run_point",
    "run_sweep",
    "records_to_csv",
]

# curve label -> (transmit scheme, detector variant)
SCHEME_LABELS: dict[str, tuple[SchemeKind, str]] = {
    "pmod_mld": (SchemeKind.PMOD, "mld"),
    "pmod_nod": (SchemeKind.PMOD, "nod"),
    "single": (SchemeKind.SINGLE, "single"),
    "ostbc": (SchemeKind.OSTBC, "ostbc"),
    "vblast": (SchemeKind.VBLAST, "vblast"),
}

CSV_COLUMNS = (
    "scheme",
    "modulation",
    "ebn0_db",
    "xpd_db",
    "ber",
    "ber_hpq",
    "ber_lpq",
    "bler",
    "blsr",
    "bits",
    "errors",
    "seed",
)

# blocks per chunk and chunks per stopping-rule check; fixed so the merge
# schedule (and with it every counter) is independent of the worker count
CHUNK_BLOCKS = 32
ROUND_CHUNKS = 8

_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class StopRule:
    """Stop once enough errors or enough bits, but never before min_blocks.

    min_blocks is an extension over the plain two-condition rule: block-level
    statistics (success rates near 1) need far more blocks than the bit
    budget alone would produce at low error rates. 0 disables it.
    """

    min_bit_errors: int = 200
    max_bits: int = 10_000_000
    min_blocks: int = 0

    def __post_init__(self):
        if self.min_bit_errors < 0 or self.min_blocks < 0:
            raise ValueError("thresholds must be >= 0")
        if self.max_bits < 1:
            raise ValueError("max_bits must be >= 1")

    def done(self, c: ErrorCounters) -> bool:
        enough_bits = c.bits_error >= self.min_bit_errors or c.bits_total >= self.max_bits
        return enough_bits and c.blocks_total >= self.min_blocks


@dataclass(frozen=True)
class SweepConfig:
    schemes: tuple[str, ...] = ("pmod_mld", "pmod_nod", "single", "ostbc", "vblast")
    modulation: str = "qpsk"
    ebn0_grid_db: tuple[float, ...] = tuple(float(v) for v in range(0, 21, 2))
    xpd_grid_db: tuple[float, ...] | None = None  # None: channel isolation only
    channel: ChannelConfig = field(default_factory=ChannelConfig)
    stop: StopRule = field(default_factory=StopRule)
    master_seed: int = 12345

    def __post_init__(self):
        if not self.schemes:
            raise ValueError("need at least one scheme")
        for s in self.schemes:
            if s not in SCHEME_LABELS:
                raise ValueError(f"unknown scheme {s!r}")
        if len(set(self.schemes)) != len(self.schemes):
            raise ValueError("duplicate scheme")
        make_constellation(self.modulation)  # raises on unsupported kinds
        _check_grid("ebn0_grid_db", self.ebn0_grid_db)
        if self.xpd_grid_db is not None:
            _check_grid("xpd_grid_db", self.xpd_grid_db)
        if not 0 <= self.master_seed <= _U64:
            raise ValueError("master_seed must fit in 64 bits")
        if "ostbc" in self.schemes and self.channel.block_len % 2:
            raise ValueError("block_len must be even to frame two-use codewords")

    @property
    def xpd_points(self) -> tuple[float, ...]:
        if self.xpd_grid_db is None:
            return (self.channel.isolation_db,)
        return self.xpd_grid_db


def _check_grid(name: str, grid) -> None:
    if not grid:
        raise ValueError(f"{name} is empty")
    vals = [float(v) for v in grid]
    if not all(np.isfinite(vals)):
        raise ValueError(f"{name} must be finite")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ValueError(f"{name} must be strictly increasing")


@dataclass(frozen=True)
class SweepRecord:
    scheme: str
    modulation: str
    ebn0_db: float
    xpd_db: float
    counters: ErrorCounters
    seed: int

    @property
    def ber(self) -> float:
        return self.counters.ber


def point_stream_id(master_seed: int, scheme: str, modulation: str, ebn0_db: float, xpd_db: float) -> int:
    """Stable 64-bit stream id for one grid point."""
    tag = f"{master_seed}|{scheme}|{modulation}|{ebn0_db:.6f}|{xpd_db:.6f}"
    return int.from_bytes(hashlib.sha256(tag.encode()).digest()[:8], "little")


# ---------------------------------------------------------------- chunks ---


def _noise(gen, sigma2: float, shape):
    return np.sqrt(sigma2) * standard_complex_gaussian(gen, shape)


def _count_symbol_streams(cst: Constellation, pairs_tx, pairs_hat, n_blocks: int) -> ErrorCounters:
    """Counters for schemes whose uses carry plain symbol streams."""
    ham = cst.hamming
    bit_err = 0
    sym_err = None
    for tx, hat in zip(pairs_tx, pairs_hat):
        bit_err += int(ham[tx, hat].sum())
        e = tx != hat
        sym_err = e if sym_err is None else (sym_err | e)
    block_err = int(np.count_nonzero(np.any(sym_err, axis=1)))
    uses = sum(t.size for t in pairs_tx)
    return ErrorCounters(
        bits_total=uses * cst.bits_per_symbol,
        bits_error=bit_err,
        blocks_total=n_blocks,
        blocks_error=block_err,
        payload_blocks_total=n_blocks,
        payload_blocks_error=block_err,
    )


def _chunk_pmod(gen, cfg: ChannelConfig, noise: NoiseConfig, cst: Constellation, n_blocks: int, detector: str) -> ErrorCounters:
    H = channel_blocks(cfg, n_blocks, gen)
    shape = H.shape[:2]
    c = gen.integers(0, 2, shape)
    sym = gen.integers(0, cst.size, shape)
    h0, h1 = H[..., :, 0], H[..., :, 1]
    h_tx = np.where(c[..., None] == 0, h0, h1)
    y = h_tx * cst.points[sym][..., None] + _noise(gen, noise.sigma2, shape + (2,))

    if detector == "mld":
        c_hat, s_hat, _, _ = mld_batch(y, h0, h1, cst.points)
    else:
        c_hat, s_hat = nod_batch(y, h0, h1, cst.points, noise.sigma2)[:2]

    hpq_err = c_hat != c
    lpq_bits = cst.hamming[sym, s_hat]
    uses = c.size
    payload_bad = np.any(s_hat != sym, axis=1)
    return ErrorCounters(
        bits_total=uses * (cst.bits_per_symbol + 1),
        bits_error=int(np.count_nonzero(hpq_err)) + int(lpq_bits.sum()),
        hpq_total=uses,
        hpq_error=int(np.count_nonzero(hpq_err)),
        lpq_total=uses * cst.bits_per_symbol,
        lpq_error=int(lpq_bits.sum()),
        blocks_total=n_blocks,
        blocks_error=int(np.count_nonzero(np.any(hpq_err, axis=1) | payload_bad)),
        payload_blocks_total=n_blocks,
        payload_blocks_error=int(np.count_nonzero(payload_bad)),
    )


def _chunk_single(gen, cfg, noise, cst, n_blocks) -> ErrorCounters:
    H = channel_blocks(cfg, n_blocks, gen)
    shape = H.shape[:2]
    sym = gen.integers(0, cst.size, shape)
    y0 = H[..., 0, 0] * cst.points[sym] + _noise(gen, noise.sigma2, shape)
    s_hat = single_batch(y0, H[..., 0, 0], cst.points)
    return _count_symbol_streams(cst, [sym], [s_hat], n_blocks)


def _chunk_ostbc(gen, cfg, noise, cst, n_blocks) -> ErrorCounters:
    # one fading state per two-use codeword; a block of block_len uses
    # therefore spans block_len/2 states
    H = channel_blocks(replace(cfg, block_len=cfg.block_len // 2), n_blocks, gen)
    shape = H.shape[:2]
    i1 = gen.integers(0, cst.size, shape)
    i2 = gen.integers(0, cst.size, shape)
    s1, s2 = cst.points[i1], cst.points[i2]
    h0, h1 = H[..., :, 0], H[..., :, 1]
    scale = np.sqrt(0.5)
    y1 = scale * (h0 * s1[..., None] + h1 * s2[..., None]) + _noise(gen, noise.sigma2, shape + (2,))
    y2 = scale * (-h0 * np.conj(s2)[..., None] + h1 * np.conj(s1)[..., None]) + _noise(
        gen, noise.sigma2, shape + (2,)
    )
    d1, d2 = ostbc_batch(y1, y2, h0, h1, cst.points)
    return _count_symbol_streams(cst, [i1, i2], [d1, d2], n_blocks)


def _chunk_vblast(gen, cfg, noise, cst, n_blocks) -> ErrorCounters:
    H = channel_blocks(cfg, n_blocks, gen)
    shape = H.shape[:2]
    i1 = gen.integers(0, cst.size, shape)
    i2 = gen.integers(0, cst.size, shape)
    h0, h1 = H[..., :, 0], H[..., :, 1]
    y = np.sqrt(0.5) * (h0 * cst.points[i1][..., None] + h1 * cst.points[i2][..., None])
    y = y + _noise(gen, noise.sigma2, shape + (2,))
    d1, d2 = vblast_batch(y, H, cst.points, noise.sigma2)
    return _count_symbol_streams(cst, [i1, i2], [d1, d2], n_blocks)


def _simulate_chunk(
    scheme: str,
    modulation: str,
    channel_cfg: ChannelConfig,
    ebn0_db: float,
    xpd_db: float,
    master_seed: int,
    chunk_index: int,
    n_blocks: int,
) -> ErrorCounters:
    """One chunk of fading blocks for one grid point. Top-level so process
    pools can pickle it; all randomness comes from the explicit keys."""
    kind, detector = SCHEME_LABELS[scheme]
    cst = make_constellation(modulation)
    cfg = replace(channel_cfg, isolation_db=xpd_db)
    noise = NoiseConfig(ebn0_db, bits_per_use(kind, cst.bits_per_symbol))
    pid = point_stream_id(master_seed, scheme, modulation, ebn0_db, xpd_db)
    gen = RngStream(master_seed, pid).generator(chunk_index)

    if kind is SchemeKind.PMOD:
        return _chunk_pmod(gen, cfg, noise, cst, n_blocks, detector)
    if kind is SchemeKind.SINGLE:
        return _chunk_single(gen, cfg, noise, cst, n_blocks)
    if kind is SchemeKind.OSTBC:
        return _chunk_ostbc(gen, cfg, noise, cst, n_blocks)
    return _chunk_vblast(gen, cfg, noise, cst, n_blocks)


# ---------------------------------------------------------------- driver ---


def run_point(cfg: SweepConfig, scheme: str, ebn0_db: float, xpd_db: float, executor=None) -> SweepRecord:
    """Simulate one grid point to the stopping rule."""
    if scheme not in SCHEME_LABELS:
        raise ValueError(f"unknown scheme {scheme!r}")
    counters = ErrorCounters()
    next_chunk = 0
    while not cfg.stop.done(counters):
        args = [
            (scheme, cfg.modulation, cfg.channel, ebn0_db, xpd_db, cfg.master_seed, i, CHUNK_BLOCKS)
            for i in range(next_chunk, next_chunk + ROUND_CHUNKS)
        ]
        if executor is None:
            parts = [_simulate_chunk(*a) for a in args]
        else:
            futures = [executor.submit(_simulate_chunk, *a) for a in args]
            parts = [f.result() for f in futures]
        for p in parts:  # merge in chunk order
            counters = counters + p
        next_chunk += ROUND_CHUNKS
    return SweepRecord(
        scheme=scheme,
        modulation=cfg.modulation,
        ebn0_db=float(ebn0_db),
        xpd_db=float(xpd_db),
        counters=counters,
        seed=point_stream_id(cfg.master_seed, scheme, cfg.modulation, ebn0_db, xpd_db),
    )


def run_sweep(cfg: SweepConfig, out_dir=None, workers: int = 1) -> list:
    """Run every (scheme, xpd, ebn0) point; optionally write CSV and plots."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    records = []

    def _all_points(executor):
        for scheme in cfg.schemes:
            for xpd in cfg.xpd_points:
                for ebn0 in cfg.ebn0_grid_db:
                    records.append(run_point(cfg, scheme, ebn0, xpd, executor))

    if workers == 1:
        _all_points(None)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            _all_points(pool)

    if out_dir is not None:
        from pathlib import Path

        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "results.csv").write_text(records_to_csv(records))
        from .figures import write_figures

        write_figures(records, cfg, out)
    return records


def _g6(x: float) -> str:
    return f"{x:.6g}"


def records_to_csv(records) -> str:
    """Fixed-format CSV; queue columns read 0 for schemes without queues."""
    lines = [",".join(CSV_COLUMNS)]
    for r in records:
        c = r.counters
        lines.append(
            ",".join(
                (
                    r.scheme,
                    r.modulation,
                    _g6(r.ebn0_db),
                    _g6(r.xpd_db),
                    _g6(c.ber),
                    _g6(c.ber_hpq),
                    _g6(c.ber_lpq),
                    _g6(c.bler),
                    _g6(1.0 - c.bler),
                    str(c.bits_total),
                    str(c.bits_error),
                    str(r.seed),
                )
            )
        )
    return "\n".join(lines) + "\n"
