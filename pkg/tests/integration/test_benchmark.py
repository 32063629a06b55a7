"""End-to-end benchmarks on synthetic vessel recordings.

These run the full pipeline at the default 16 kHz configuration and take
minutes; deselect them with ``-m "not slow"``.
"""

import numpy as np
import pytest

from demonsonar.audio import SampleBuffer
from demonsonar.config import CascadeConfig, DemonConfig, FeatureConfig
from demonsonar.core import extract_feature_table
from demonsonar.demon import demon_spectrum
from demonsonar.evaluation import evaluate
from demonsonar.features import estimate_blade_count, estimate_shaft_frequency
from demonsonar.models import fit_cascade
from demonsonar.synth import (
    VesselParams,
    default_synth_spec,
    generate_dataset,
    synth_vessel_signal,
)

pytestmark = [pytest.mark.slow, pytest.mark.integration]

RATE = 16000.0
DURATION_S = 30.0


class TestLineRecovery:
    """Test shaft and blade recovery over seeded vessels."""

    def test_recovers_shaft_and_blades(self):
        # Arrange
        config = DemonConfig()
        features = FeatureConfig()
        bin_hz = config.envelope_rate_hz / config.frame_len
        grid = np.arange(int(np.ceil(3.0 / bin_hz)), int(10.0 / bin_hz) + 1)
        rng = np.random.default_rng(2024)
        shaft_hits = blade_hits = 0

        # Act
        for seed in range(100):
            shaft_bin = int(rng.choice(grid))
            blades = int(rng.integers(2, 6))
            params = VesselParams(
                shaft_hz=shaft_bin * bin_hz,
                blade_count=blades,
                duration_s=DURATION_S,
                sample_rate_hz=RATE,
                seed=seed,
            )
            spectrum = demon_spectrum(synth_vessel_signal(params), config)
            shaft_hz, _ = estimate_shaft_frequency(
                spectrum,
                features.shaft_min_hz,
                features.shaft_max_hz,
                features.n_harmonics,
            )
            if abs(round(shaft_hz / bin_hz) - shaft_bin) <= 1:
                shaft_hits += 1
            if shaft_hz > 0 and estimate_blade_count(spectrum, shaft_hz) == blades:
                blade_hits += 1

        # Assert
        assert shaft_hits >= 95
        assert blade_hits >= 90

    def test_noise_only_gives_no_detection(self):
        """Test unmodulated noise mostly yields the (0, 0) sentinel."""
        config = DemonConfig()
        misses = 0

        for seed in range(50):
            noise = np.random.default_rng(seed).standard_normal(int(DURATION_S * RATE))
            spectrum = demon_spectrum(SampleBuffer(noise, RATE), config)
            if estimate_shaft_frequency(spectrum, 1.0, 15.0) == (0.0, 0.0):
                misses += 1

        assert misses >= 45


class TestCascadeBenchmark:
    """Test the synthetic audio to cascade accuracy pipeline."""

    def test_default_dataset_accuracy(self, temp_dir):
        # Arrange
        manifest = generate_dataset(default_synth_spec(), temp_dir)
        table = extract_feature_table(manifest)

        # Act
        fit = fit_cascade(table, CascadeConfig())
        coarse, fine = evaluate(fit.model, table.iloc[fit.val_index])

        # Assert
        assert len(fit.val_index) == 40
        assert coarse.overall_accuracy >= 0.90
        assert fine is not None
        assert fine.overall_accuracy >= 0.80
        assert fit.coarse_history.best_val_accuracy == pytest.approx(
            coarse.overall_accuracy, abs=1e-12
        )
