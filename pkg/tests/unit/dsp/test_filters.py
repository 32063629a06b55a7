"""Tests for FIR design, filtering and decimation."""

import numpy as np
import pytest

from demonsonar.dsp import (
    FilterKind,
    FirFilter,
    decimate,
    decimation_filter,
    design_fir,
    filter_apply,
    square_law_envelope,
)
from demonsonar.exceptions import ContractError


class TestDesignFir:
    """Test cases for design_fir."""

    def test_lowpass_is_symmetric_with_unit_dc_gain(self):
        """Test lowpass taps are linear phase and sum to one."""
        # Act
        fir = design_fir(FilterKind.LOWPASS, None, 100.0, 1000.0, 31)

        # Assert
        np.testing.assert_allclose(fir.taps, fir.taps[::-1], atol=1e-15)
        assert np.sum(fir.taps) == pytest.approx(1.0, abs=1e-12)
        assert len(fir) == 31 and fir.group_delay == 15

    def test_bandpass_unit_gain_at_centre(self):
        """Test a bandpass passes its centre frequency at unit gain."""
        fir = design_fir(FilterKind.BANDPASS, 200.0, 600.0, 4000.0, 129)

        assert abs(fir.response(400.0)) == pytest.approx(1.0, abs=1e-12)
        assert abs(fir.response(0.0)) < 0.01
        assert abs(fir.response(1800.0)) < 0.01

    def test_bandpass_passband_and_stopband_levels(self):
        """Test the default carrier band shape from zero-padded taps."""
        # Arrange
        fir = design_fir(FilterKind.BANDPASS, 1000.0, 4000.0, 16000.0, 129)

        # Act: 3.90625 Hz per bin
        gain_db = 20 * np.log10(np.abs(np.fft.rfft(fir.taps, 4096)) + 1e-300)

        # Assert
        assert gain_db[640] >= -1.0
        assert gain_db[25] <= -40.0 and gain_db[26] <= -40.0

    def test_lowpass_attenuates_stopband(self):
        fir = design_fir(FilterKind.LOWPASS, None, 100.0, 1000.0, 101)

        assert abs(fir.response(300.0)) < 0.01

    @pytest.mark.parametrize("n_taps", [9, 12])
    def test_rejects_bad_length(self, n_taps):
        """Test lengths below 11 or even lengths are refused."""
        with pytest.raises(ContractError, match="n_taps"):
            design_fir(FilterKind.LOWPASS, None, 100.0, 1000.0, n_taps)

    @pytest.mark.parametrize(
        "f_lo, f_hi",
        [(None, 300.0), (300.0, 200.0), (100.0, 500.0), (0.0, 200.0)],
    )
    def test_rejects_bad_band_edges(self, f_lo, f_hi):
        with pytest.raises(ContractError):
            design_fir(FilterKind.BANDPASS, f_lo, f_hi, 1000.0, 31)

    def test_rejects_cutoff_at_nyquist(self):
        with pytest.raises(ContractError):
            design_fir(FilterKind.LOWPASS, None, 500.0, 1000.0, 31)

    def test_asymmetric_taps_rejected(self):
        with pytest.raises(ContractError, match="symmetric"):
            FirFilter(np.arange(11.0), FilterKind.LOWPASS, 100.0, 1000.0)


class TestFilterApply:
    """Test cases for zero-phase filtering."""

    def test_matches_direct_convolution(self):
        """Test each output equals the centred convolution sum."""
        # Arrange
        rng = np.random.default_rng(11)
        signal = rng.normal(size=200)
        fir = design_fir(FilterKind.LOWPASS, None, 50.0, 1000.0, 21)
        delay = fir.group_delay

        # Act
        filtered = filter_apply(fir, signal)

        # Assert
        padded = np.pad(signal, delay)
        expected = np.array(
            [np.dot(fir.taps, padded[n : n + len(fir)][::-1]) for n in range(200)]
        )
        assert filtered.shape == signal.shape
        assert np.max(np.abs(filtered - expected)) <= 1e-12

    def test_constant_passes_lowpass_in_interior(self):
        fir = design_fir(FilterKind.LOWPASS, None, 50.0, 1000.0, 21)

        filtered = filter_apply(fir, np.ones(100))

        np.testing.assert_allclose(filtered[10:90], 1.0, atol=1e-12)

    def test_signal_shorter_than_filter(self):
        fir = design_fir(FilterKind.LOWPASS, None, 50.0, 1000.0, 21)

        with pytest.raises(ContractError, match="shorter"):
            filter_apply(fir, np.ones(20))


class TestDecimate:
    """Test cases for decimate."""

    def test_equals_filtered_then_subsampled(self):
        """Test decimation computes exactly the retained filter outputs."""
        # Arrange
        rng = np.random.default_rng(2)
        signal = rng.normal(size=1003)

        # Act
        decimated, rate = decimate(signal, 4000.0, 5)

        # Assert
        expected = filter_apply(decimation_filter(4000.0, 5), signal)[::5]
        assert rate == 800.0
        assert decimated.size == expected.size == 201
        np.testing.assert_allclose(decimated, expected, atol=1e-12)

    def test_tone_keeps_its_frequency(self):
        """Test a 5 Hz tone sampled at 1 kHz stays at 5 Hz after factor 10."""
        # Arrange
        n = np.arange(10240)
        tone = np.sin(2 * np.pi * 5.0 * n / 1000.0)

        # Act
        decimated, rate = decimate(tone, 1000.0, 10)

        # Assert: both spectra span 10.24 s, so bin indices coincide
        assert rate == 100.0 and decimated.size == 1024
        before = int(np.argmax(np.abs(np.fft.rfft(tone))))
        after = int(np.argmax(np.abs(np.fft.rfft(decimated))))
        assert after == before == 51

    def test_default_filter_geometry(self):
        fir = decimation_filter(16000.0, 80)

        assert len(fir) == 16 * 80 + 1
        assert fir.f_hi_hz == pytest.approx(90.0)

    def test_factor_one_is_identity(self):
        samples, rate = decimate([1.0, 2.0, 3.0], 100.0, 1)

        np.testing.assert_array_equal(samples, [1.0, 2.0, 3.0])
        assert rate == 100.0

    @pytest.mark.parametrize("factor", [0, -2, 2.5])
    def test_rejects_bad_factor(self, factor):
        with pytest.raises(ContractError):
            decimate(np.ones(100), 1000.0, factor)

    def test_rejects_short_signal(self):
        with pytest.raises(ContractError, match="shorter"):
            decimate(np.ones(20), 1000.0, 4)


class TestEnvelope:
    """Test cases for the square-law detector."""

    def test_squares_samples(self):
        np.testing.assert_array_equal(square_law_envelope([-2.0, 0.5]), [4.0, 0.25])

    def test_am_tone_yields_modulation_line(self):
        """Test detecting an AM carrier exposes the modulating frequency."""
        # Arrange
        fs = 1000.0
        t = np.arange(2000) / fs
        am = (1.0 + 0.5 * np.cos(2 * np.pi * 5.0 * t)) * np.cos(2 * np.pi * 200.0 * t)

        # Act
        envelope = square_law_envelope(am)
        lowpass = design_fir(FilterKind.LOWPASS, None, 20.0, fs, 201)
        smooth = filter_apply(lowpass, envelope)[200:1800]

        # Assert: mean 0.5 * (1 + 0.125), 5 Hz swing of amplitude 0.5
        assert np.mean(smooth) == pytest.approx(0.5625, abs=0.01)
        assert np.ptp(smooth) == pytest.approx(1.0, abs=0.05)
