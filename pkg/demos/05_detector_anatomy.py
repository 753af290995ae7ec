"""
One channel use, step by step
=============================

Everything the receivers do, on a single noisy observation: the exhaustive
candidate search, the soft polarization score, the posterior-weighted
branch combining, and the final decisions of both detectors.
"""

import numpy as np

from polmod import (
    ChannelConfig,
    NoiseConfig,
    RngStream,
    channel_blocks,
    detect_pmod_mld,
    detect_pmod_nod,
    encode_pmod,
    make_constellation,
    pmod_combine,
    pmod_likelihood_ratio,
)

cst = make_constellation("qpsk")
gen = RngStream(99, 0).generator()

H = channel_blocks(ChannelConfig(), 1, gen)[0, 0]
noise = NoiseConfig(ebn0_db=10.0, bits_per_channel_use=3)

bits = [1, 0, 1]  # polarization bit first, then the symbol label
word = encode_pmod(bits, cst)
print(f"tx bits {bits} -> polarization {word.c}, symbol index {word.symbol_index}")
print(f"transmit vector x = {np.round(word.x, 3)}")

y = H @ word.x + np.sqrt(noise.sigma2 / 2) * (gen.normal(size=2) + 1j * gen.normal(size=2))
print(f"received y = {np.round(y, 3)}")

# the exhaustive detector scores every (polarization, symbol) pair
print("\ncandidate distances |y - h_c s|^2:")
for c in (0, 1):
    ds = [float(np.sum(np.abs(y - H[:, c] * s) ** 2)) for s in cst.points]
    print(f"  c={c}: " + "  ".join(f"s{i}={d:7.4f}" for i, d in enumerate(ds)))

mld = detect_pmod_mld(y, H, cst)
print(f"exhaustive decision: c={mld.c_hat}, symbol={mld.symbol_hat}, metric={mld.metric:.4f}")

# the reduced detector splits the problem: soft polarization first
llr = pmod_likelihood_ratio(y, H, cst, noise.sigma2)
comb = pmod_combine(y, H, cst, noise.sigma2)
print(f"\nsoft polarization score = {llr:+.2f} (positive favors polarization 1)")
print(f"branch weights w0={comb.w0:.4f} w1={comb.w1:.4f}")
print(f"combined scalar r = {comb.r:.3f}, effective gain {comb.g_eff:.3f}")

nod = detect_pmod_nod(y, H, cst, noise.sigma2)
print(f"reduced decision:   c={nod.c_hat}, symbol={nod.symbol_hat}")

agree = (mld.c_hat, mld.symbol_hat) == (nod.c_hat, nod.symbol_hat)
print(f"\ndetectors agree here: {agree}")
print(
    "They disagree mainly in deep fades of the selected column, where the "
    "exhaustive search can still lean on energy in the other branch; that "
    "residual difference is a fraction of a dB at practical error rates."
)
