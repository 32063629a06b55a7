"""Feature extraction component: recordings in, salient feature rows out."""

from pathlib import Path
from typing import List, Optional, Tuple, Union

import pandas as pd
from loguru import logger
from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn

from ..audio import SampleBuffer, read_wav
from ..config import DemonConfig, FeatureConfig
from ..demon import DemonSpectrum, demon_spectrum
from ..evaluation import DatasetManifest
from ..features import (
    Peak,
    SalientFeatures,
    build_feature_table,
    detect_peaks,
    extract_salient_features,
    feature_row,
)

console = Console(stderr=True)


class FeatureExtractor:
    """
    Runs the DEMON pipeline and salient feature extraction.

    Only responsible for turning audio into features - does not train or report.
    """

    def __init__(
        self,
        demon_config: Optional[DemonConfig] = None,
        feature_config: Optional[FeatureConfig] = None,
    ):
        """Initialize the extractor with pipeline parameters."""
        self.demon_config = demon_config or DemonConfig()
        self.feature_config = feature_config or FeatureConfig()

    def analyze_buffer(
        self, buffer: SampleBuffer
    ) -> Tuple[DemonSpectrum, SalientFeatures]:
        """DEMON spectrum and salient features of one recording."""
        spectrum = demon_spectrum(buffer, self.demon_config)
        return spectrum, extract_salient_features(spectrum, self.feature_config)

    def analyze_file(
        self, path: Union[str, Path]
    ) -> Tuple[DemonSpectrum, SalientFeatures]:
        return self.analyze_buffer(read_wav(path))

    def detect_lines(self, spectrum: DemonSpectrum) -> List[Peak]:
        """Local maxima above ``peak_threshold`` times the analysis median."""
        return detect_peaks(spectrum, self.feature_config.peak_threshold)

    def extract_table(
        self, manifest: DatasetManifest, show_progress: bool = True
    ) -> pd.DataFrame:
        """
        Extract one feature row per manifest recording.

        Args:
            manifest: Labeled audio manifest
            show_progress: Render a progress bar on stderr

        Returns:
            Feature table in manifest order, paths as written in the manifest
        """
        rows = []
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TextColumn("{task.completed}/{task.total}"),
            console=console,
            disable=not show_progress,
        ) as progress:
            task = progress.add_task(
                "Extracting DEMON features...", total=len(manifest)
            )
            for record in manifest.rows.itertuples(index=False):
                _, features = self.analyze_file(manifest.resolve(record.path))
                rows.append(
                    feature_row(
                        record.path, record.label_coarse, record.label_fine, features
                    )
                )
                progress.advance(task)

        logger.info(f"Extracted features for {len(rows)} recordings")
        return build_feature_table(rows)


def extract_feature_table(
    manifest: DatasetManifest,
    demon_config: Optional[DemonConfig] = None,
    feature_config: Optional[FeatureConfig] = None,
) -> pd.DataFrame:
    """Feature table for every row of an audio manifest."""
    return FeatureExtractor(demon_config, feature_config).extract_table(manifest)
