"""Receive-side decision algorithms.

Scalar operations mirror the batch kernels one-to-one (each scalar op runs
the batch kernel on a batch of one), so the Monte Carlo engine and the
per-sample API can never drift apart. Batch kernels broadcast over any
leading axes; the trailing axes are the physical ones documented per
function.

Conventions: H columns are transmit polarizations (h_c = H[:, c]); sigma2
is the per-branch complex noise variance; all exponential sums run in the
log domain so nothing underflows at high SNR.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constellation import Constellation
from .numerics import log_sum_exp

__all__ = [
    "DetectionResult",
    "CombinedSignal",
    "detect_pmod_mld",
    "pmod_likelihood_ratio",
    "pmod_combine",
    "detect_pmod_nod",
    "detect_single",
    "detect_ostbc",
    "detect_vblast_mmse",
    "pmod_candidates",
    "mld_batch",
    "llr_batch",
    "nod_batch",
    "single_batch",
    "ostbc_batch",
    "vblast_batch",
]


@dataclass(frozen=True)
class DetectionResult:
    c_hat: int
    symbol_hat: int
    llr_c: float  # log-ratio score for c=1 vs c=0; c_hat = 1 iff llr_c > 0
    metric: float  # value of the decision metric at the winner


@dataclass(frozen=True)
class CombinedSignal:
    r: complex
    g_eff: complex
    w0: float
    w1: float


# ---------------------------------------------------------------- batch ---


def pmod_candidates(h0, h1, points):
    """All 2^(b+1) noiseless receive vectors h_c * s.

    Candidate k encodes (c, symbol) = (k // M, k % M) with M = len(points),
    so a plain argmin over k implements the (c ascending, symbol ascending)
    tie-break. Shape (..., 2M, 2).
    """
    c0 = h0[..., None, :] * points[:, None]
    c1 = h1[..., None, :] * points[:, None]
    return np.concatenate([c0, c1], axis=-2)


def mld_batch(y, h0, h1, points):
    """Exhaustive minimum-distance search over the restricted candidate set.

    y, h0, h1: (..., 2). Returns (c_hat, symbol_hat, gap, metric) where gap
    is min_c0-distance minus min_c1-distance (positive favors c=1, the same
    sign convention as the soft score) and metric the winning distance.
    """
    m = len(points)
    d = np.sum(np.abs(y[..., None, :] - pmod_candidates(h0, h1, points)) ** 2, axis=-1)
    k = np.argmin(d, axis=-1)
    gap = np.min(d[..., :m], axis=-1) - np.min(d[..., m:], axis=-1)
    return k // m, k % m, gap, np.take_along_axis(d, k[..., None], axis=-1)[..., 0]


def _branch_energies(y, h, points, sigma2):
    # log-domain candidate scores -||y - h s||^2 / sigma2 for one column
    d = np.sum(np.abs(y[..., None, :] - h[..., None, :] * points[:, None]) ** 2, axis=-1)
    return -d / sigma2


def llr_batch(y, h0, h1, points, sigma2):
    """Soft polarization score log P(c=1|y) - log P(c=0|y) (flat prior)."""
    e0 = _branch_energies(y, h0, points, sigma2)
    e1 = _branch_energies(y, h1, points, sigma2)
    return log_sum_exp(e1, axis=-1) - log_sum_exp(e0, axis=-1)


def nod_batch(y, h0, h1, points, sigma2):
    """Reduced-complexity detection: soft polarization split, then a scalar demap.

    The two receive branches are blended with the normalized polarization
    posteriors, r = w0 y0 + w1 y1 with w1 = sigmoid(llr), and the symbol is
    demapped against the matching blend of the detected column,
    g_eff = w0 H[0, c_hat] + w1 H[1, c_hat]. Cost per use is two M-term
    log-sums plus one M-point scalar demap instead of a 2M-point vector
    search. Returns (c_hat, symbol_hat, llr, r, g_eff, w0, w1).
    """
    llr = llr_batch(y, h0, h1, points, sigma2)
    c_hat = (llr > 0).astype(np.int64)
    w1 = 0.5 * (1.0 + np.tanh(0.5 * llr))  # sigmoid computed without overflow
    w0 = 1.0 - w1
    r = w0 * y[..., 0] + w1 * y[..., 1]
    h_sel = np.where(c_hat[..., None] == 0, h0, h1)
    g_eff = w0 * h_sel[..., 0] + w1 * h_sel[..., 1]
    symbol_hat = np.argmin(np.abs(r[..., None] - g_eff[..., None] * points) ** 2, axis=-1)
    return c_hat, symbol_hat, llr, r, g_eff, w0, w1


def single_batch(y0, h00, points):
    """Nearest-point demap of the branch-0 observation against gain h00."""
    return np.argmin(np.abs(y0[..., None] - h00[..., None] * points) ** 2, axis=-1)


def ostbc_batch(y1, y2, h0, h1, points):
    """Alamouti combining over the polarization-time pair, then per-symbol demap.

    Matched-filter combining of (y1, y2*) decouples the two symbols exactly
    for any H (the stacked code columns are orthogonal), with effective gain
    ||H||_F^2 and the sqrt(2) transmit scaling undone before the demap.
    """
    z1 = np.sum(np.conj(h0) * y1, axis=-1) + np.conj(np.sum(np.conj(h1) * y2, axis=-1))
    z2 = np.sum(np.conj(h1) * y1, axis=-1) - np.conj(np.sum(np.conj(h0) * y2, axis=-1))
    fnorm = np.sum(np.abs(h0) ** 2 + np.abs(h1) ** 2, axis=-1)
    est1 = np.sqrt(2.0) * z1 / fnorm
    est2 = np.sqrt(2.0) * z2 / fnorm
    i1 = np.argmin(np.abs(est1[..., None] - points) ** 2, axis=-1)
    i2 = np.argmin(np.abs(est2[..., None] - points) ** 2, axis=-1)
    return i1, i2


def vblast_batch(y, H, points, sigma2):
    """Linear MMSE equalization, per-stream demap, no interference cancellation.

    W = (H^H H + 2 sigma2 I)^-1 H^H; the 2 sigma2 regularizer is the MMSE
    term for streams at power 1/2, and the estimate is rescaled by sqrt(2)
    to land on the unit-energy constellation grid.
    """
    Hh = np.conj(np.swapaxes(H, -1, -2))
    A = Hh @ H + 2.0 * sigma2 * np.eye(2)
    est = np.sqrt(2.0) * np.squeeze(np.linalg.solve(A, Hh @ y[..., None]), axis=-1)
    i1 = np.argmin(np.abs(est[..., 0, None] - points) ** 2, axis=-1)
    i2 = np.argmin(np.abs(est[..., 1, None] - points) ** 2, axis=-1)
    return i1, i2


# --------------------------------------------------------------- scalar ---


def _cols(H):
    H = np.asarray(H, dtype=complex)
    return H[:, 0], H[:, 1]


def detect_pmod_mld(y, H, cst: Constellation) -> DetectionResult:
    """Exact joint decision over the 2^(b+1) candidates {h_c * s}.

    Ties break toward lower polarization index, then lower symbol index.
    The llr_c field carries the distance gap (same sign convention as the
    soft detector, but unscaled by the noise level, which this detector
    does not need to know).
    """
    y = np.asarray(y, dtype=complex)
    h0, h1 = _cols(H)
    c, s, gap, metric = mld_batch(y, h0, h1, cst.points)
    return DetectionResult(int(c), int(s), float(gap), float(metric))


def pmod_likelihood_ratio(y, H, cst: Constellation, sigma2: float) -> float:
    """Log-ratio of the polarization posteriors, marginalized over symbols."""
    if sigma2 <= 0:
        raise ValueError("sigma2 must be > 0")
    h0, h1 = _cols(H)
    return float(llr_batch(np.asarray(y, dtype=complex), h0, h1, cst.points, sigma2))


def pmod_combine(y, H, cst: Constellation, sigma2: float) -> CombinedSignal:
    """Posterior-weighted blend of the receive branches and its matched gain."""
    if sigma2 <= 0:
        raise ValueError("sigma2 must be > 0")
    h0, h1 = _cols(H)
    _, _, _, r, g_eff, w0, w1 = nod_batch(np.asarray(y, dtype=complex), h0, h1, cst.points, sigma2)
    return CombinedSignal(complex(r), complex(g_eff), float(w0), float(w1))


def detect_pmod_nod(y, H, cst: Constellation, sigma2: float) -> DetectionResult:
    """Reduced-complexity detection; see nod_batch for the algorithm."""
    if sigma2 <= 0:
        raise ValueError("sigma2 must be > 0")
    y = np.asarray(y, dtype=complex)
    h0, h1 = _cols(H)
    c, s, llr, r, g_eff, _, _ = nod_batch(y, h0, h1, cst.points, sigma2)
    metric = float(np.abs(r - g_eff * cst.points[int(s)]) ** 2)
    return DetectionResult(int(c), int(s), float(llr), metric)


def detect_single(y0: complex, h00: complex, cst: Constellation) -> int:
    """Single-feed baseline: demap the branch-0 observation against h00.

    The cross-polarized share of the transmit energy never reaches this
    receiver; that loss is the point of the baseline.
    """
    if h00 == 0:
        raise ValueError("degenerate channel: h00 = 0")
    return int(single_batch(np.asarray(y0, dtype=complex), np.asarray(h00, dtype=complex), cst.points))


def detect_ostbc(y1, y2, H, cst: Constellation):
    """Decode one Alamouti pair; exact joint-ML by code orthogonality."""
    H = np.asarray(H, dtype=complex)
    if not np.any(H):
        raise ValueError("degenerate channel: H = 0")
    h0, h1 = _cols(H)
    i1, i2 = ostbc_batch(np.asarray(y1, dtype=complex), np.asarray(y2, dtype=complex), h0, h1, cst.points)
    return int(i1), int(i2)


def detect_vblast_mmse(y, H, cst: Constellation, sigma2: float):
    """MMSE-equalize the two multiplexed streams and demap each."""
    if sigma2 <= 0:
        raise ValueError("sigma2 must be > 0")
    i1, i2 = vblast_batch(np.asarray(y, dtype=complex), np.asarray(H, dtype=complex), cst.points, sigma2)
    return int(i1), int(i2)
