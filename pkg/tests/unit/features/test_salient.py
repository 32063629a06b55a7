"""Tests for salient feature extraction."""

import numpy as np
import pytest

from demonsonar.config import FeatureConfig
from demonsonar.demon import demon_spectrum
from demonsonar.exceptions import InputValidationError
from demonsonar.features import FEATURE_NAMES, SalientFeatures, extract_salient_features


class TestExtractSalientFeatures:
    """Test cases for extract_salient_features."""

    def test_constructed_spectrum(self, make_spectrum):
        """Test all five features on a spectrum with known lines."""
        # Arrange: shaft 5 Hz, four blades at 20 Hz
        spectrum = make_spectrum({10: 0.5, 20: 0.3, 30: 0.3, 40: 1.0})

        # Act
        features = extract_salient_features(spectrum, FeatureConfig())

        # Assert
        assert features.shaft_freq_hz == 5.0
        assert features.blade_freq_hz == 20.0
        assert features.blade_count == 4
        assert features.max_shaft_freq_hz == 5.0
        assert features.max_blade_freq_hz == 20.0
        expected_avg = (0.5 + 0.3 + 0.3 + 1.0 + 124 * 0.01) / 128
        assert features.avg_strength == pytest.approx(expected_avg)

    def test_silent_spectrum_gives_zero_sentinels(self, make_spectrum):
        features = extract_salient_features(make_spectrum({}, floor=0.0))

        np.testing.assert_array_equal(features.to_vector(), np.zeros(5))
        assert features.blade_count is None

    def test_synthetic_vessel(self, make_vessel, fast_demon_config):
        """Test the shaft rate of a synthetic recording is recovered."""
        # Arrange: 3.90625 Hz shaft sits on bin 5 of the fast configuration
        recording = make_vessel(shaft_hz=3.90625, blade_count=4, snr_db=20.0)

        # Act
        spectrum = demon_spectrum(recording, fast_demon_config)
        features = extract_salient_features(spectrum, FeatureConfig())

        # Assert
        assert features.shaft_freq_hz == pytest.approx(3.90625, abs=0.79)
        assert features.blade_freq_hz == pytest.approx(15.625, abs=1.6)

    @pytest.mark.parametrize("gain", [1e-3, 7.0, 1e3])
    def test_input_gain_does_not_change_features(
        self, make_vessel, fast_demon_config, gain
    ):
        """Test all five features ignore the recording level."""
        # Arrange
        recording = make_vessel(shaft_hz=3.90625, blade_count=4)
        config = FeatureConfig()

        # Act
        reference = extract_salient_features(
            demon_spectrum(recording, fast_demon_config), config
        )
        scaled = extract_salient_features(
            demon_spectrum(recording.scaled(gain), fast_demon_config), config
        )

        # Assert
        np.testing.assert_allclose(
            scaled.to_vector(), reference.to_vector(), rtol=0, atol=1e-6
        )


class TestSalientFeatures:
    """Test cases for the SalientFeatures value."""

    def test_vector_order(self):
        features = SalientFeatures(15.0, 5.0, 0.1, 5.0, 15.0)

        assert features.to_vector().tolist() == [15.0, 5.0, 0.1, 5.0, 15.0]
        assert len(FEATURE_NAMES) == 5
        assert SalientFeatures.from_vector(features.to_vector()) == features

    def test_from_vector_rejects_wrong_length(self):
        with pytest.raises(InputValidationError, match="5 feature values"):
            SalientFeatures.from_vector([1.0, 2.0])

    def test_from_vector_rejects_nan(self):
        with pytest.raises(InputValidationError):
            SalientFeatures.from_vector([1.0, 2.0, np.nan, 0.0, 0.0])
