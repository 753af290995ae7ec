import math

import numpy as np
import pytest

from polmod.channel import (
    ChannelConfig,
    NoiseConfig,
    apply_channel,
    channel_blocks,
    coupling_split,
    next_channel,
)
from polmod.numerics import RngStream, bessel_j0


def gen(seed=0, sid=0):
    return RngStream(seed, sid).generator()


class TestCouplingSplit:
    def test_full_mixing_at_zero_db(self):
        assert coupling_split(0.0) == pytest.approx(0.5, abs=1e-15)

    def test_vanishes_at_ideal_isolation(self):
        assert 0 < coupling_split(300.0) < 1e-30

    def test_below_zero_rejected(self):
        with pytest.raises(ValueError):
            coupling_split(-1.0)

    @pytest.mark.parametrize("iso", [0.0, 3.0, 10.0, 20.0, 26.215, 40.0])
    def test_realizes_power_ratio_exactly(self, iso):
        # algebraic identity: ((1-e)^2 + e^2) / (2 e (1-e)) = 10^(iso/10)
        e = coupling_split(iso)
        co = (1 - e) ** 2 + e**2
        cross = 2 * e * (1 - e)
        assert 10 * math.log10(co / cross) == pytest.approx(iso, abs=1e-9)

    def test_monotone_in_isolation(self):
        es = [coupling_split(v) for v in (0, 5, 10, 20, 30)]
        assert all(a > b for a, b in zip(es, es[1:]))


class TestConfigValidation:
    def test_defaults_ok(self):
        cfg = ChannelConfig()
        assert cfg.rho == pytest.approx(bessel_j0(2 * math.pi * 1e-3), abs=1e-15)

    @pytest.mark.parametrize(
        "kw",
        [
            dict(symbol_rate_hz=0.0),
            dict(doppler_hz=-1.0),
            dict(doppler_hz=5000.0),
            dict(isolation_db=float("inf")),
            dict(block_len=0),
            dict(fading="rician"),
            dict(slow_sigma_db=-2.0),
        ],
    )
    def test_bad_configs(self, kw):
        with pytest.raises(ValueError):
            ChannelConfig(**kw)


class TestFadingProcess:
    def test_zero_doppler_constant(self):
        cfg = ChannelConfig(doppler_hz=0.0)
        st = next_channel(cfg, None, gen(1))
        g = gen(1)
        next_channel(cfg, None, g)  # burn the init draw with a twin generator
        for _ in range(20):
            st2 = next_channel(cfg, st, g)
            np.testing.assert_allclose(st2.H, st.H, atol=1e-15)
            st = st2

    def test_time_index_advances(self):
        cfg = ChannelConfig()
        g = gen(3)
        st = next_channel(cfg, None, g)
        assert st.time_index == 0
        assert next_channel(cfg, st, g).time_index == 1

    def test_ideal_isolation_diagonal(self):
        cfg = ChannelConfig(isolation_db=300.0)
        st = next_channel(cfg, None, gen(2))
        assert abs(st.H[0, 1]) < 1e-12 and abs(st.H[1, 0]) < 1e-12

    def test_reciprocity_exact(self):
        h = channel_blocks(ChannelConfig(isolation_db=12.0), 50, gen(4))
        np.testing.assert_array_equal(h[..., 0, 1], h[..., 1, 0])

    def test_moments_and_isolation_realized(self):
        iso = 26.215
        h = channel_blocks(ChannelConfig(isolation_db=iso, block_len=1), 10**5, gen(5))
        co = np.mean(np.abs(h[..., 0, 0]) ** 2)
        cross = np.mean(np.abs(h[..., 0, 1]) ** 2)
        r = 10 ** (iso / 10)
        assert co == pytest.approx(1.0, rel=2e-2)  # Rayleigh co-polar moment
        assert co == pytest.approx(r / (r + 1), rel=1e-2)  # model closed form
        assert 10 * math.log10(co / cross) == pytest.approx(iso, abs=0.5)
        assert np.mean(np.abs(h[..., 1, 1]) ** 2) == pytest.approx(co, rel=2e-2)

    def test_frobenius_energy_conserved_any_isolation(self):
        for iso in (0.0, 5.0, 26.215):
            h = channel_blocks(ChannelConfig(isolation_db=iso, block_len=1), 4 * 10**4, gen(6))
            total = np.mean(np.sum(np.abs(h) ** 2, axis=(-2, -1)))
            assert total == pytest.approx(2.0, rel=2e-2), f"iso={iso}"

    def test_lag_autocorrelation_tracks_bessel(self):
        cfg = ChannelConfig(block_len=2 * 10**5)
        h00 = channel_blocks(cfg, 1, gen(7))[0, :, 0, 0]
        rho = cfg.rho
        for k in (1, 2, 5, 10):
            emp = np.mean(h00[k:] * np.conj(h00[:-k])).real / np.mean(np.abs(h00) ** 2)
            assert emp == pytest.approx(rho**k, abs=0.02), f"lag {k}"

    def test_blocks_are_independent_segments(self):
        h = channel_blocks(ChannelConfig(block_len=4), 2 * 10**4, gen(8))
        a, b = h[:, -1, 0, 0], h[:, 0, 0, 0]  # last use of a block vs first of the same block
        c = np.roll(h[:, 0, 0, 0], -1)  # first use of the *next* block
        rho_within = abs(np.mean(a * np.conj(b))) / np.mean(np.abs(a) ** 2)
        rho_across = abs(np.mean(a * np.conj(c))) / np.mean(np.abs(a) ** 2)
        assert rho_within > 0.9  # fd/Rs = 1e-3, essentially frozen inside a block
        assert rho_across < 0.05

    def test_zero_db_isolation_columns_coincide(self):
        h = channel_blocks(ChannelConfig(isolation_db=0.0, block_len=1), 100, gen(9))
        np.testing.assert_allclose(h[..., :, 0], h[..., :, 1], atol=1e-12)

    def test_slow_fading_block_structure(self):
        cfg = ChannelConfig(slow_sigma_db=3.0, doppler_hz=0.0, block_len=8)
        g = gen(10)
        first = next_channel(cfg, None, g)
        second = next_channel(cfg, first, g)
        assert second.scale == first.scale  # carried over within the block
        fresh = next_channel(cfg, None, g)
        assert fresh.scale != first.scale  # redrawn at the next block

    def test_awgn_mode_identity(self):
        cfg = ChannelConfig(fading="awgn")
        st = next_channel(cfg, None, gen(11))
        np.testing.assert_array_equal(st.H, np.eye(2))
        h = channel_blocks(cfg, 7, gen(11))
        assert h.shape == (7, cfg.block_len, 2, 2)
        np.testing.assert_array_equal(h[3, 42], np.eye(2))


class TestNoiseAndApply:
    def test_sigma2_formula(self):
        assert NoiseConfig(10.0, 3).sigma2 == pytest.approx(1.0 / 30.0, rel=1e-12)
        assert NoiseConfig(0.0, 1).sigma2 == pytest.approx(1.0)
        with pytest.raises(ValueError):
            NoiseConfig(10.0, 0)

    def test_noiseless_identity(self):
        y = apply_channel(np.eye(2), np.array([1 - 1j, 0]), NoiseConfig(300.0, 1), gen(12))
        np.testing.assert_allclose(y, [1 - 1j, 0], atol=1e-14)

    def test_noise_only_variance(self):
        nc = NoiseConfig(3.0, 2)
        y = apply_channel(np.zeros((2, 2)), np.zeros(2), nc, gen(13))
        ys = np.array([apply_channel(np.zeros((2, 2)), np.zeros(2), nc, gen(13, s)) for s in range(10**5 // 2)])
        var = np.mean(np.abs(ys) ** 2)
        assert var == pytest.approx(nc.sigma2, rel=3e-2)
        assert y.shape == (2,)

    def test_mean_is_hx(self):
        rng = np.random.default_rng(0)
        H = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        x = np.array([0.3 + 0.4j, -0.7j])
        nc = NoiseConfig(0.0, 2)
        g = gen(14)
        ys = np.stack([apply_channel(H, x, nc, g) for _ in range(10**5)])
        err = np.abs(ys.mean(axis=0) - H @ x)
        tol = 5 * math.sqrt(nc.sigma2) / math.sqrt(10**5)
        assert np.all(err < tol)
