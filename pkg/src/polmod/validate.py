"""Built-in self checks.

A fast, dependency-light way to confirm an installation behaves: each check
recomputes something the library claims through an independent route (closed
forms, exhaustive search, repeated runs) and reports PASS or FAIL. The full
test suite is stricter; this is the field version.
"""

from __future__ import annotations

import math

import numpy as np

from .channel import ChannelConfig, channel_blocks
from .constellation import make_constellation
from .detectors import detect_pmod_mld, pmod_likelihood_ratio
from .engine import StopRule, SweepConfig, records_to_csv, run_point
from .numerics import RngStream, bessel_j0, log_sum_exp, q_function

__all__ = ["run_checks", "CHECKS"]


def _check_log_sum():
    gen = np.random.default_rng(1)
    v = gen.normal(size=200)
    direct = math.log(np.exp(v).sum())
    got = log_sum_exp(v)
    err = abs(got - direct) / abs(direct)
    return err < 1e-12, f"relative error {err:.2e}"


def _check_bessel():
    root = 2.404825557695773
    a = abs(bessel_j0(root))
    b = abs(bessel_j0(1.0) - 0.7651976865579666)
    return a < 1e-8 and b < 1e-12, f"|J0(root)|={a:.1e}"


def _check_constellation():
    for kind in ("bpsk", "qpsk", "qam16"):
        cst = make_constellation(kind)
        e = float(np.mean(np.abs(cst.points) ** 2))
        if abs(e - 1.0) > 1e-12:
            return False, f"{kind} mean energy {e}"
    return True, "unit mean energy, all kinds"


def _check_exhaustive_detector():
    cst = make_constellation("qpsk")
    gen = np.random.default_rng(7)
    for _ in range(500):
        H = (gen.normal(size=(2, 2)) + 1j * gen.normal(size=(2, 2))) / math.sqrt(2)
        c = gen.integers(0, 2)
        s = gen.integers(0, 4)
        y = H[:, c] * cst.points[s] + 0.2 * (gen.normal(size=2) + 1j * gen.normal(size=2))
        d = detect_pmod_mld(y, H, cst)
        best = min(
            ((cc, ss) for cc in (0, 1) for ss in range(4)),
            key=lambda t: float(np.sum(np.abs(y - H[:, t[0]] * cst.points[t[1]]) ** 2)),
        )
        if (d.c_hat, d.symbol_hat) != best:
            return False, "mismatch against brute force"
    return True, "500/500 match brute force"


def _check_soft_score_stability():
    cst = make_constellation("qpsk")
    H = np.array([[1.0, 0.05], [0.05, 0.9]], dtype=complex)
    y = H[:, 1] * cst.points[2]
    llr = pmod_likelihood_ratio(y, H, cst, sigma2=1.0 / (10.0 ** 4.0 * 3))
    return math.isfinite(llr) and llr > 0, f"llr={llr:.3g} at 40 dB"


def _check_isolation():
    cfg = ChannelConfig(isolation_db=26.215, block_len=1)
    H = channel_blocks(cfg, 40_000, RngStream(3, 0).generator())
    co = float(np.mean(np.abs(H[..., 0, 0]) ** 2))
    cross = float(np.mean(np.abs(H[..., 1, 0]) ** 2))
    got = 10.0 * math.log10(co / cross)
    return abs(got - 26.215) < 0.5, f"realized isolation {got:.2f} dB"


def _check_awgn_reference():
    cfg = SweepConfig(
        schemes=("single",),
        modulation="bpsk",
        ebn0_grid_db=(6.0,),
        channel=ChannelConfig(fading="awgn", block_len=50),
        stop=StopRule(min_bit_errors=150, max_bits=2_000_000),
        master_seed=5,
    )
    c = run_point(cfg, "single", 6.0, 26.215).counters
    p = q_function(math.sqrt(2.0 * 10.0 ** 0.6))
    sigma = math.sqrt(p * (1 - p) / c.bits_total)
    return abs(c.ber - p) < 3 * sigma, f"ber {c.ber:.4g} vs closed form {p:.4g}"


def _check_determinism():
    cfg = SweepConfig(
        schemes=("pmod_nod",),
        ebn0_grid_db=(6.0,),
        channel=ChannelConfig(block_len=20),
        stop=StopRule(min_bit_errors=20, max_bits=40_000),
    )
    a = records_to_csv([run_point(cfg, "pmod_nod", 6.0, 26.215)])
    b = records_to_csv([run_point(cfg, "pmod_nod", 6.0, 26.215)])
    return a == b, "repeated run byte-identical"


CHECKS = (
    ("log-domain summation", _check_log_sum),
    ("bessel J0", _check_bessel),
    ("constellation energy", _check_constellation),
    ("exhaustive detector", _check_exhaustive_detector),
    ("soft score stability", _check_soft_score_stability),
    ("channel isolation", _check_isolation),
    ("awgn closed form", _check_awgn_reference),
    ("determinism", _check_determinism),
)


def run_checks(emit=print) -> bool:
    """Run every check, emit one line each, return overall success."""
    all_ok = True
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not a stop
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok &= ok
        emit(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return all_ok
