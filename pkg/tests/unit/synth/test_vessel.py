"""Tests for the synthetic propeller recordings."""

import numpy as np
import pytest

from demonsonar.exceptions import ContractError
from demonsonar.synth import (
    VesselParams,
    modulation,
    synth_components,
    synth_vessel_signal,
)


def _params(**overrides) -> VesselParams:
    values = dict(shaft_hz=5.0, blade_count=3, duration_s=2.0, sample_rate_hz=4000.0)
    values.update(overrides)
    return VesselParams(**values)


class TestVesselParams:
    """Test cases for VesselParams validation."""

    @pytest.mark.parametrize(
        "overrides",
        [
            {"shaft_hz": 0.0},
            {"blade_count": 1},
            {"blade_count": 8},
            {"mod_depth": 1.2},
            {"mod_depth": 0.8, "shaft_line_frac": 0.5},
            {"shaft_hz": 30.0, "blade_count": 4},
            {"duration_s": 0.01},
            {"carrier_hi_hz": 2500.0},
        ],
    )
    def test_rejects_invalid(self, overrides):
        with pytest.raises(ContractError):
            _params(**overrides)

    def test_blade_rate(self):
        assert _params(shaft_hz=4.0, blade_count=5).blade_rate_hz == 20.0

    def test_default_carrier_band(self):
        assert _params().carrier_band() == (400.0, 1800.0)


class TestModulation:
    """Test cases for the propeller modulation envelope."""

    def test_envelope_bounds(self):
        """Test the envelope stays within 1 +/- mod_depth."""
        params = _params(mod_depth=0.6)

        envelope = modulation(params)

        assert envelope.min() >= 0.4 - 1e-12
        assert envelope.max() == pytest.approx(1.6)

    def test_zero_depth_is_flat(self):
        np.testing.assert_array_equal(modulation(_params(mod_depth=0.0)), 1.0)


class TestSynthVesselSignal:
    """Test cases for synth_vessel_signal."""

    def test_snr_is_exact(self):
        """Test the noise component is scaled to the requested SNR."""
        # Arrange
        params = _params(snr_db=7.5)

        # Act
        signal, noise = synth_components(params)

        # Assert
        ratio = np.mean(signal**2) / np.mean(noise**2)
        assert 10 * np.log10(ratio) == pytest.approx(7.5, abs=1e-9)

    def test_peak_normalized(self):
        recording = synth_vessel_signal(_params())

        assert np.max(np.abs(recording.samples)) == pytest.approx(0.9)
        assert recording.sample_rate_hz == 4000.0
        assert len(recording) == 8000

    def test_deterministic_per_seed(self):
        a = synth_vessel_signal(_params(seed=12))
        b = synth_vessel_signal(_params(seed=12))
        c = synth_vessel_signal(_params(seed=13))

        np.testing.assert_array_equal(a.samples, b.samples)
        assert not np.array_equal(a.samples, c.samples)
