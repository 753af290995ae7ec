"""Figure recipes: each writer emits the plotted series as CSV next to a
rendered PNG so results stay inspectable without the plotting stack.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .constellation import Constellation, make_constellation
from .engine import SweepConfig, point_stream_id
from .metrics import gain_degradation
from .numerics import RngStream

__all__ = [
    "dump_hierarchical_constellation",
    "write_constellation_figure",
    "write_ber_figure",
    "write_queue_figure",
    "write_xpd_figure",
    "write_figures",
]


def _g6(x) -> str:
    return f"{float(x):.6g}"


def dump_hierarchical_constellation(H, cst: Constellation):
    """Noiseless receive-amplitude points ||h_c|| s for every labeled word.

    The polarization bit widens the constellation into rings whose radii are
    the two column gains; with poor isolation the rings collapse onto each
    other, which is exactly the failure mode the scatter makes visible.
    Returns (polarization, symbol_index, point) triples, 2^(b+1) of them.
    """
    H = np.asarray(H, dtype=complex)
    if H.shape != (2, 2):
        raise ValueError("H must be 2x2")
    out = []
    for c in (0, 1):
        gain = float(np.linalg.norm(H[:, c]))
        for i, s in enumerate(cst.points):
            out.append((c, i, gain * complex(s)))
    return out


def write_constellation_figure(H, cst: Constellation, out_dir) -> list:
    out = Path(out_dir)
    pts = dump_hierarchical_constellation(H, cst)
    lines = ["c,symbol,re,im"]
    lines += [f"{c},{i},{_g6(p.real)},{_g6(p.imag)}" for c, i, p in pts]
    csv_path = out / "fig1_constellation.csv"
    csv_path.write_text("\n".join(lines) + "\n")

    fig, ax = plt.subplots(figsize=(5, 5))
    for c, marker in ((0, "o"), (1, "x")):
        xs = [p.real for cc, _, p in pts if cc == c]
        ys = [p.imag for cc, _, p in pts if cc == c]
        ax.scatter(xs, ys, marker=marker, label=f"polarization {c}")
    ax.axhline(0, lw=0.5, color="grey")
    ax.axvline(0, lw=0.5, color="grey")
    ax.set_xlabel("in-phase")
    ax.set_ylabel("quadrature")
    ax.set_title(f"hierarchical constellation, {cst.name}")
    ax.legend()
    ax.set_aspect("equal")
    png_path = out / "fig1_constellation.png"
    fig.savefig(png_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return [csv_path, png_path]


def _series(records, key):
    """Group records by key(r), each group sorted by Eb/N0."""
    groups: dict = {}
    for r in records:
        groups.setdefault(key(r), []).append(r)
    for g in groups.values():
        g.sort(key=lambda r: r.ebn0_db)
    return groups


def write_ber_figure(records, out_dir) -> list:
    if not records:
        raise ValueError("no records")
    out = Path(out_dir)
    groups = _series(records, lambda r: (r.scheme, r.xpd_db))
    many_xpd = len({x for _, x in groups}) > 1

    lines = ["scheme,xpd_db,ebn0_db,ber"]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for (scheme, xpd), recs in groups.items():
        e = [r.ebn0_db for r in recs]
        b = [r.counters.ber for r in recs]
        lines += [f"{scheme},{_g6(xpd)},{_g6(x)},{_g6(y)}" for x, y in zip(e, b)]
        label = f"{scheme} @ {_g6(xpd)} dB" if many_xpd else scheme
        shown = [(x, y) for x, y in zip(e, b) if y > 0]
        if shown:
            ax.semilogy([x for x, _ in shown], [y for _, y in shown], marker="o", label=label)
    csv_path = out / "fig2_ber.csv"
    csv_path.write_text("\n".join(lines) + "\n")
    ax.set_xlabel("Eb/N0 (dB)")
    ax.set_ylabel("bit error rate")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    png_path = out / "fig2_ber.png"
    fig.savefig(png_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return [csv_path, png_path]


def write_queue_figure(records, out_dir) -> list:
    """Per-queue error rates of the polarization-keyed curves."""
    recs = [r for r in records if r.counters.hpq_total]
    if not recs:
        raise ValueError("no records with queue counts")
    out = Path(out_dir)
    groups = _series(recs, lambda r: (r.scheme, r.xpd_db))
    many_xpd = len({x for _, x in groups}) > 1

    lines = ["scheme,xpd_db,ebn0_db,ber_hpq,ber_lpq"]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for (scheme, xpd), rs in groups.items():
        e = [r.ebn0_db for r in rs]
        hp = [r.counters.ber_hpq for r in rs]
        lp = [r.counters.ber_lpq for r in rs]
        lines += [
            f"{scheme},{_g6(xpd)},{_g6(x)},{_g6(h)},{_g6(l)}" for x, h, l in zip(e, hp, lp)
        ]
        tag = f"{scheme} @ {_g6(xpd)} dB" if many_xpd else scheme
        for vals, queue, style in ((hp, "control", "--"), (lp, "payload", "-")):
            shown = [(x, y) for x, y in zip(e, vals) if y > 0]
            if shown:
                ax.semilogy(
                    [x for x, _ in shown],
                    [y for _, y in shown],
                    style,
                    marker=".",
                    label=f"{tag} {queue}",
                )
    csv_path = out / "fig3_queues.csv"
    csv_path.write_text("\n".join(lines) + "\n")
    ax.set_xlabel("Eb/N0 (dB)")
    ax.set_ylabel("bit error rate")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    png_path = out / "fig3_queues.png"
    fig.savefig(png_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return [csv_path, png_path]


def write_xpd_figure(records, out_dir) -> list:
    """Robustness to finite cross-polar isolation.

    For each scheme and operating point the payload block success rate is
    normalized by its value at the best isolation on the grid, so 1.0 reads
    as no degradation. The payload view is used on purpose: once the two
    polarizations become indistinguishable the polarization bit itself
    carries no information, while the symbol stream may still get through.
    """
    xpds = sorted({r.xpd_db for r in records})
    if len(xpds) < 2:
        raise ValueError("need at least two isolation points")
    out = Path(out_dir)
    ref_xpd = xpds[-1]
    by_curve = _series(records, lambda r: (r.scheme, r.ebn0_db))

    lines = ["scheme,ebn0_db,xpd_db,gain_ratio"]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    many_e = len({e for _, e in by_curve}) > 1
    for (scheme, ebn0), rs in sorted(by_curve.items()):
        ref = [r for r in rs if r.xpd_db == ref_xpd]
        if not ref or ref[0].counters.payload_blsr <= 0:
            continue
        ref_rate = ref[0].counters.payload_blsr
        rs = sorted(rs, key=lambda r: r.xpd_db)
        xs = [r.xpd_db for r in rs]
        ys = [gain_degradation(r.counters.payload_blsr, ref_rate) for r in rs]
        lines += [f"{scheme},{_g6(ebn0)},{_g6(x)},{_g6(y)}" for x, y in zip(xs, ys)]
        tag = f"{scheme} @ {_g6(ebn0)} dB" if many_e else scheme
        ax.plot(xs, ys, marker="o", label=tag)
    csv_path = out / "fig4_xpd.csv"
    csv_path.write_text("\n".join(lines) + "\n")
    ax.set_xlabel("cross-polar isolation (dB)")
    ax.set_ylabel("block success ratio vs best isolation")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    png_path = out / "fig4_xpd.png"
    fig.savefig(png_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return [csv_path, png_path]


def write_figures(records, cfg: SweepConfig, out_dir) -> list:
    """Emit every figure the sweep's records support."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cst = make_constellation(cfg.modulation)
    pid = point_stream_id(cfg.master_seed, "fig1", cfg.modulation, 0.0, cfg.channel.isolation_db)
    from .channel import channel_blocks

    H = channel_blocks(cfg.channel, 1, RngStream(cfg.master_seed, pid).generator())[0, 0]
    paths = write_constellation_figure(H, cst, out)
    paths += write_ber_figure(records, out)
    if any(r.counters.hpq_total for r in records):
        paths += write_queue_figure(records, out)
    if len({r.xpd_db for r in records}) > 1:
        paths += write_xpd_figure(records, out)
    return paths
