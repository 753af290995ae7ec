import itertools

import numpy as np
import pytest

from polmod.constellation import demap_hard, make_constellation
from polmod.schemes import (
    SchemeKind,
    bits_per_use,
    encode_ostbc,
    encode_pmod,
    encode_single,
    encode_vblast,
    se_gain,
)

QPSK = make_constellation("qpsk")


def test_bits_per_use_table():
    assert bits_per_use(SchemeKind.PMOD, 2) == 3
    assert bits_per_use(SchemeKind.SINGLE, 2) == 2
    assert bits_per_use(SchemeKind.OSTBC, 4) == 4
    assert bits_per_use(SchemeKind.VBLAST, 2) == 4


class TestEncodePmod:
    def test_polarization_placement(self):
        w = encode_pmod((0, 0, 0), QPSK)
        assert w.c == 0 and w.x[1] == 0 and w.x[0] == QPSK.points[0]
        w = encode_pmod((1, 1, 1), QPSK)
        assert w.c == 1 and w.x[0] == 0 and w.x[1] == QPSK.points[3]

    def test_exhaustive_distinct_one_nonzero(self):
        words = [encode_pmod(bits, QPSK) for bits in itertools.product((0, 1), repeat=3)]
        assert len({(w.c, w.symbol_index) for w in words}) == 8
        for w in words:
            assert np.count_nonzero(w.x) == 1
            assert w.x[w.c] != 0
            assert np.abs(np.linalg.norm(w.x)) == pytest.approx(1.0, abs=1e-12)

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            encode_pmod((0, 1), QPSK)


class TestEncodeSingle:
    def test_fixed_polarization(self):
        for bits in itertools.product((0, 1), repeat=2):
            w = encode_single(bits, QPSK)
            assert w.c == 0 and w.x[1] == 0

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            encode_single((0, 1, 1), QPSK)


class TestEncodeOstbc:
    def test_alamouti_structure(self):
        x1, x2 = encode_ostbc((0, 0, 1, 1), QPSK)
        s1, s2 = QPSK.points[0b00], QPSK.points[0b11]
        np.testing.assert_allclose(x1, np.array([s1, s2]) / np.sqrt(2), atol=1e-15)
        np.testing.assert_allclose(x2, np.array([-np.conj(s2), np.conj(s1)]) / np.sqrt(2), atol=1e-15)

    def test_pair_energy(self):
        for bits in itertools.product((0, 1), repeat=4):
            x1, x2 = encode_ostbc(bits, QPSK)
            e = np.linalg.norm(x1) ** 2 + np.linalg.norm(x2) ** 2
            assert e == pytest.approx(2.0, abs=1e-12)  # unit energy per use, two uses

    def test_code_matrix_orthogonality(self):
        x1, x2 = encode_ostbc((0, 1, 1, 0), QPSK)
        G = np.stack([x1, x2], axis=1) * np.sqrt(2)  # unnormalized code matrix
        GhG = np.conj(G.T) @ G
        s1, s2 = QPSK.points[0b01], QPSK.points[0b10]
        np.testing.assert_allclose(GhG, (abs(s1) ** 2 + abs(s2) ** 2) * np.eye(2), atol=1e-12)


class TestEncodeVblast:
    def test_framing_msb_first(self):
        x = encode_vblast((0, 1, 1, 0), QPSK)
        np.testing.assert_allclose(x, np.array([QPSK.points[0b01], QPSK.points[0b10]]) / np.sqrt(2))

    def test_unit_energy_qpsk(self):
        for bits in itertools.product((0, 1), repeat=4):
            assert np.linalg.norm(encode_vblast(bits, QPSK)) ** 2 == pytest.approx(1.0, abs=1e-12)

    def test_all_inputs_distinct(self):
        xs = {tuple(np.round(encode_vblast(b, QPSK), 12)) for b in itertools.product((0, 1), repeat=4)}
        assert len(xs) == 16


def test_average_energy_per_use_all_schemes():
    rng = np.random.default_rng(0)
    c16 = make_constellation("qam16")
    # a pmod word's energy is its symbol's energy; sample the symbol law
    e_pmod = np.mean(np.abs(c16.points[rng.integers(0, 16, 10**5)]) ** 2)
    assert e_pmod == pytest.approx(1.0, abs=6e-3)  # 3 sigma at n = 1e5
    # the full input space is small, so the strict check is exhaustive and exact
    words = [encode_pmod(b, c16) for b in itertools.product((0, 1), repeat=5)]
    assert np.mean([np.linalg.norm(w.x) ** 2 for w in words]) == pytest.approx(1.0, abs=1e-12)
    v = [np.linalg.norm(encode_vblast(b, c16)) ** 2 for b in itertools.product((0, 1), repeat=8)]
    assert np.mean(v) == pytest.approx(1.0, abs=1e-12)
    o = [
        (np.linalg.norm(x1) ** 2 + np.linalg.norm(x2) ** 2) / 2
        for x1, x2 in (encode_ostbc(b, c16) for b in itertools.product((0, 1), repeat=8))
    ]
    assert np.mean(o) == pytest.approx(1.0, abs=1e-12)


def test_noiseless_identity_roundtrip_every_scheme():
    # decode through H = I with zero noise using plain nearest-point demaps
    for bits in itertools.product((0, 1), repeat=3):
        w = encode_pmod(bits, QPSK)
        c = int(w.x[1] != 0)
        idx, sym_bits = demap_hard(QPSK, complex(w.x[c]))
        assert (c,) + sym_bits == bits
    for bits in itertools.product((0, 1), repeat=2):
        w = encode_single(bits, QPSK)
        assert demap_hard(QPSK, complex(w.x[0]))[1] == bits
    for bits in itertools.product((0, 1), repeat=4):
        x = encode_vblast(bits, QPSK)
        got = demap_hard(QPSK, complex(x[0] * np.sqrt(2)))[1] + demap_hard(QPSK, complex(x[1] * np.sqrt(2)))[1]
        assert got == bits
    for bits in itertools.product((0, 1), repeat=4):
        x1, x2 = encode_ostbc(bits, QPSK)
        s1 = complex(x1[0] * np.sqrt(2))
        s2 = complex(x1[1] * np.sqrt(2))
        assert demap_hard(QPSK, s1)[1] + demap_hard(QPSK, s2)[1] == bits
        np.testing.assert_allclose(x2 * np.sqrt(2), [-np.conj(s2), np.conj(s1)], atol=1e-12)


class TestSeGain:
    def test_paper_anchor_qpsk(self):
        assert se_gain(2.0) == pytest.approx(1.5)  # +50% at SE 2

    def test_arithmetic(self):
        assert se_gain(1.0) == 2.0
        assert se_gain(4.0) == 1.25

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            se_gain(0.0)
