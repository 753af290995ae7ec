"""
What bad polarization isolation does to each scheme
===================================================

Sweep the channel's cross-polar isolation from "none" (0 dB, the two
polarizations fully mixed) to "ideal" (300 dB) at a fixed mid-range Eb/N0,
and track each scheme's payload block success rate relative to its own
ideal-isolation value.

The single-feed scheme pays directly: at 0 dB isolation its branch keeps
only half the energy on average, and its success ratio drops toward one
half. The polarization-keyed scheme holds its payload throughput across
the sweep - with exact detection it even improves at full mixing, because
both receive branches then carry the same symbol.

Block counts are kept modest here; the ratios wobble by a few percent.
"""

from pathlib import Path

from polmod import ChannelConfig, StopRule, SweepConfig, run_sweep
from polmod.figures import write_xpd_figure

XPDS = (0.0, 5.0, 10.0, 15.0, 20.0, 26.215, 300.0)

cfg = SweepConfig(
    schemes=("pmod_mld", "pmod_nod", "single"),
    modulation="qpsk",
    ebn0_grid_db=(8.0,),
    xpd_grid_db=XPDS,
    channel=ChannelConfig(),
    stop=StopRule(min_bit_errors=200, max_bits=20_000_000, min_blocks=4000),
    master_seed=424242,
)
records = run_sweep(cfg)

by_scheme = {}
for r in records:
    by_scheme.setdefault(r.scheme, {})[r.xpd_db] = r.counters.payload_blsr

print(f"{'isolation':>10}  " + "  ".join(f"{s:>9}" for s in cfg.schemes))
for x in XPDS:
    row = [by_scheme[s][x] / by_scheme[s][XPDS[-1]] for s in cfg.schemes]
    print(f"{x:10g}  " + "  ".join(f"{v:9.3f}" for v in row))

print(
    "\nNote the reduced detector's dip at 5-10 dB: partially mixed columns "
    "are its hardest case, since its scalar combining can blend the branches "
    "against the wrong gain. Exact detection has no such dip."
)

out = Path(__file__).parent / "out" / "xpd"
out.mkdir(parents=True, exist_ok=True)
for p in write_xpd_figure(records, out):
    print(f"wrote {p}")
