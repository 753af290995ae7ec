import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polmod.channel import ChannelConfig, channel_blocks
from polmod.metrics import (
    ErrorCounters,
    XpdSample,
    accumulate,
    blsr,
    gain_degradation,
    xpd_db,
)
from polmod.numerics import RngStream


def naive_counts(tx, rx, bpu, hpq_per_use):
    """Straight recount with no shared framing logic."""
    bits_err = sum(1 for a, b in zip(tx, rx) if a != b)
    hpq_t = hpq_e = lpq_t = lpq_e = 0
    payload_bad = False
    for k in range(len(tx)):
        hp = (k % bpu) < hpq_per_use
        if hpq_per_use:
            if hp:
                hpq_t += 1
                hpq_e += tx[k] != rx[k]
            else:
                lpq_t += 1
                lpq_e += tx[k] != rx[k]
        if tx[k] != rx[k] and not hp:
            payload_bad = True
    return bits_err, hpq_t, hpq_e, lpq_t, lpq_e, payload_bad


class TestCounters:
    def test_zero_is_identity(self):
        a = ErrorCounters(bits_total=10, bits_error=2, blocks_total=1, blocks_error=1)
        assert a + ErrorCounters() == a
        assert ErrorCounters() + a == a

    def test_merge_is_fieldwise_sum(self):
        a = ErrorCounters(bits_total=6, bits_error=1, blocks_total=2, blocks_error=1)
        b = ErrorCounters(bits_total=4, bits_error=3, blocks_total=1, blocks_error=1)
        c = a + b
        assert c.bits_total == 10 and c.bits_error == 4
        assert c.blocks_total == 3 and c.blocks_error == 2

    @given(
        st.lists(
            st.tuples(st.integers(0, 50), st.integers(0, 50)).map(
                lambda t: ErrorCounters(
                    bits_total=max(t), bits_error=min(t), blocks_total=1
                )
            ),
            min_size=1,
            max_size=6,
        )
    )
    @settings(max_examples=50, deadline=None)
    def test_merge_order_free(self, parts):
        front = ErrorCounters()
        for p in parts:
            front = front + p
        back = ErrorCounters()
        for p in reversed(parts):
            back = p + back
        assert front == back

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            ErrorCounters(bits_total=-1)

    def test_errors_capped_by_totals(self):
        with pytest.raises(ValueError):
            ErrorCounters(bits_total=1, bits_error=2)
        with pytest.raises(ValueError):
            ErrorCounters(hpq_total=0, hpq_error=1)

    def test_rates(self):
        c = ErrorCounters(
            bits_total=1000,
            bits_error=10,
            hpq_total=200,
            hpq_error=1,
            lpq_total=800,
            lpq_error=9,
            blocks_total=50,
            blocks_error=5,
            payload_blocks_total=50,
            payload_blocks_error=4,
        )
        assert c.ber == 0.01
        assert c.ber_hpq == 0.005
        assert c.ber_lpq == pytest.approx(9 / 800)
        assert c.bler == 0.1
        assert c.payload_blsr == pytest.approx(0.92)

    def test_empty_rates_read_zero(self):
        c = ErrorCounters(bits_total=10, bits_error=0, blocks_total=1)
        assert c.ber_hpq == 0.0 and c.ber_lpq == 0.0


class TestAccumulate:
    def test_identical_bits_no_errors(self):
        bits = [0, 1, 1, 0, 1, 0]
        c = accumulate(ErrorCounters(), bits, bits, bits_per_use=3, hpq_bits_per_use=1)
        assert c.bits_error == 0 and c.blocks_error == 0
        assert c.blocks_total == 1 and c.payload_blocks_total == 1
        assert c.hpq_total == 2 and c.lpq_total == 4

    def test_control_bit_flip_spares_payload_block(self):
        tx = [0, 1, 1, 0, 1, 0]
        rx = [1, 1, 1, 0, 1, 0]  # first bit of first use is the control bit
        c = accumulate(ErrorCounters(), tx, rx, bits_per_use=3, hpq_bits_per_use=1)
        assert c.hpq_error == 1 and c.lpq_error == 0
        assert c.blocks_error == 1
        assert c.payload_blocks_error == 0

    def test_payload_flip_errors_both_views(self):
        tx = [0, 1, 1, 0]
        rx = [0, 0, 1, 0]
        c = accumulate(ErrorCounters(), tx, rx, bits_per_use=2, hpq_bits_per_use=1)
        assert c.blocks_error == 1 and c.payload_blocks_error == 1

    def test_no_queue_split_leaves_queues_empty(self):
        tx = [0, 1, 1, 0]
        rx = [1, 1, 0, 0]
        c = accumulate(ErrorCounters(), tx, rx, bits_per_use=2)
        assert c.hpq_total == 0 and c.lpq_total == 0
        assert c.bits_error == 2
        # with no control bits every error is a payload error
        assert c.payload_blocks_error == 1

    def test_queue_totals_partition_bits(self):
        rng = np.random.default_rng(7)
        tx = rng.integers(0, 2, 300).tolist()
        rx = rng.integers(0, 2, 300).tolist()
        c = accumulate(ErrorCounters(), tx, rx, bits_per_use=3, hpq_bits_per_use=1)
        assert c.hpq_total + c.lpq_total == c.bits_total
        assert c.hpq_error + c.lpq_error == c.bits_error

    @pytest.mark.parametrize("trial", range(20))
    def test_matches_naive_recount(self, trial):
        rng = np.random.default_rng(100 + trial)
        bpu = int(rng.integers(1, 5))
        hpq = int(rng.integers(0, bpu + 1)) % bpu if bpu > 1 else 0
        uses = int(rng.integers(1, 40))
        tx = rng.integers(0, 2, bpu * uses).tolist()
        rx = [b if rng.random() > 0.2 else 1 - b for b in tx]
        c = accumulate(ErrorCounters(), tx, rx, bits_per_use=bpu, hpq_bits_per_use=hpq)
        be, ht, he, lt, le, pb = naive_counts(tx, rx, bpu, hpq)
        assert c.bits_error == be
        assert (c.hpq_total, c.hpq_error) == (ht, he)
        assert (c.lpq_total, c.lpq_error) == (lt, le)
        assert c.payload_blocks_error == int(pb)
        assert c.blocks_error == int(be > 0)

    def test_iid_flip_ber_unbiased(self):
        # flipping each bit with prob p must be recovered by the estimator
        rng = np.random.default_rng(11)
        p = 0.07
        c = ErrorCounters()
        for _ in range(200):
            tx = rng.integers(0, 2, 120).tolist()
            rx = [b ^ (rng.random() < p) for b in tx]
            c = accumulate(c, tx, rx, bits_per_use=3, hpq_bits_per_use=1)
        n = c.bits_total
        sigma = math.sqrt(p * (1 - p) / n)
        assert abs(c.ber - p) < 4 * sigma

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            accumulate(ErrorCounters(), [0, 1], [0], bits_per_use=1)

    def test_ragged_framing_rejected(self):
        with pytest.raises(ValueError):
            accumulate(ErrorCounters(), [0, 1, 1], [0, 1, 1], bits_per_use=2)


class TestXpd:
    def test_equal_magnitudes_zero_db(self):
        assert xpd_db(XpdSample(1.0, 1.0)) == 0.0

    def test_factor_ten_is_twenty_db(self):
        assert xpd_db(XpdSample(10.0, 1.0)) == pytest.approx(20.0)

    def test_zero_cross_is_infinite(self):
        assert xpd_db(XpdSample(1.0, 0.0)) == math.inf

    def test_measured_channel_isolation_closes(self):
        # long-run mean of per-use measured XPD should sit at the configured
        # isolation: both entries are marginally Rayleigh so the log-offset
        # cancels in the difference and only the power ratio survives.
        # one-use blocks give independent draws; slow fading would otherwise
        # shrink the effective sample count drastically.
        cfg = ChannelConfig(isolation_db=26.215, block_len=1)
        gen = RngStream(404, 0).generator()
        H = channel_blocks(cfg, 100_000, gen)
        vals = [
            xpd_db(XpdSample(abs(h00), abs(h10)))
            for h00, h10 in zip(H[..., 0, 0].ravel(), H[..., 1, 0].ravel())
        ]
        assert abs(float(np.mean(vals)) - 26.215) < 0.5


class TestBlsrAndGain:
    def test_blsr_complements_bler(self):
        c = ErrorCounters(bits_total=10, bits_error=1, blocks_total=10, blocks_error=3)
        assert blsr(c) + c.bler == pytest.approx(1.0)

    def test_blsr_needs_blocks(self):
        with pytest.raises(ValueError):
            blsr(ErrorCounters())

    def test_gain_ratio(self):
        assert gain_degradation(0.45, 0.9) == pytest.approx(0.5)
        assert gain_degradation(0.9, 0.9) == pytest.approx(1.0)

    def test_gain_reference_must_be_positive(self):
        with pytest.raises(ValueError):
            gain_degradation(0.5, 0.0)
