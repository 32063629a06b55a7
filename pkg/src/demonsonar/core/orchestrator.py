"""Core orchestrator wiring synthesis, analysis, training and evaluation."""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd
from loguru import logger
from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn

from ..audio import read_wav
from ..config import CascadeConfig
from ..demon import demon_gram, render_demon_gram
from ..evaluation import (
    DatasetManifest,
    Metrics,
    SweepResult,
    evaluate,
    read_manifest,
    sweep_hidden_widths,
    write_manifest,
)
from ..exceptions import ArtifactIOError, ContractError
from ..features import (
    build_feature_table,
    feature_matrix,
    feature_row,
    write_feature_table,
)
from ..models import CascadeFit, Prediction, fit_cascade, load_model, save_model
from ..reports import EvaluationReport, write_sweep_report
from ..synth import MANIFEST_NAME, SynthSpec, generate_dataset
from .dataset_overview import DatasetOverview
from .feature_extractor import FeatureExtractor
from .report_manager import ReportManager

console = Console(stderr=True)

PathLike = Union[str, Path]
SUBSETS = ("all", "train", "val")


def _ensure_parent(path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ArtifactIOError(
            path.parent, f"cannot create directory: {e.strerror or e}"
        ) from e


def _write_csv(df: pd.DataFrame, path: Path) -> Path:
    try:
        df.to_csv(path, index=False)
    except OSError as e:
        raise ArtifactIOError(path, f"cannot write CSV: {e.strerror or e}") from e
    return path


class DemonSonarOrchestrator:
    """
    Orchestrates the DEMON classification workflow.

    Components are injected so each step can be replaced in tests; the
    orchestrator itself only sequences them and reports progress.
    """

    def __init__(
        self,
        extractor: Optional[FeatureExtractor] = None,
        report_manager: Optional[ReportManager] = None,
        overview: Optional[DatasetOverview] = None,
        show_progress: bool = True,
    ):
        """
        Initialize the orchestrator with dependency injection.

        Args:
            extractor: Feature extractor (creates default if None)
            report_manager: Report manager (created per output prefix if None)
            overview: Dataset overview calculator (creates default if None)
            show_progress: Render progress bars on stderr
        """
        self.extractor = extractor or FeatureExtractor()
        self.report_manager = report_manager
        self.overview = overview or DatasetOverview()
        self.show_progress = show_progress

    # Data preparation

    def synthesize(self, spec: SynthSpec, out_dir: PathLike) -> Path:
        """Generate a synthetic dataset and return its manifest path."""
        with console.status("[bold green]Synthesizing recordings..."):
            manifest = generate_dataset(spec, out_dir)
        console.print(
            f"✅ [bold green]{len(manifest)} recordings written to {out_dir}[/bold green]"
        )
        return Path(out_dir) / MANIFEST_NAME

    def load_dataset(self, manifest_path: PathLike) -> DatasetManifest:
        """Read a manifest, extracting features when it lists audio only."""
        manifest = read_manifest(manifest_path)
        if manifest.has_features:
            return manifest
        table = self.extractor.extract_table(manifest, show_progress=self.show_progress)
        extra = [c for c in manifest.rows.columns if c not in table.columns]
        for column in extra:
            table[column] = manifest.rows[column].to_numpy()
        return DatasetManifest(table, manifest.base_dir)

    def describe(
        self, manifest: DatasetManifest, refine_category: Optional[int]
    ) -> Dict[str, Any]:
        overview = self.overview.calculate_overview(manifest, refine_category)
        self.overview.display_overview(overview, console)
        return overview

    # Analysis

    def analyze_recording(
        self, wav_path: PathLike, out_prefix: PathLike, slice_s: float = 10.0
    ) -> Dict[str, Path]:
        """
        Write the DEMON spectrum, detected lines, DEMON-gram and salient features.

        A recording shorter than ``slice_s`` becomes a single-row gram.
        """
        buffer = read_wav(wav_path)
        spectrum, features = self.extractor.analyze_buffer(buffer)
        slice_len = min(slice_s, buffer.duration_s)
        gram = demon_gram(buffer, self.extractor.demon_config, slice_len)

        prefix = Path(out_prefix)
        _ensure_parent(prefix)
        spectrum_path = _write_csv(
            pd.DataFrame(
                {
                    "freq_hz": [repr(float(f)) for f in spectrum.frequencies_hz],
                    "magnitude": [repr(float(m)) for m in spectrum.magnitudes],
                }
            ),
            Path(f"{prefix}_spectrum.csv"),
        )
        peaks = self.extractor.detect_lines(spectrum)
        peaks_path = _write_csv(
            pd.DataFrame(
                {
                    "freq_hz": [repr(p.freq_hz) for p in peaks],
                    "magnitude": [repr(p.magnitude) for p in peaks],
                    "bin": [p.bin_index for p in peaks],
                },
                columns=["freq_hz", "magnitude", "bin"],
            ),
            Path(f"{prefix}_peaks.csv"),
        )
        logger.info(f"Detected {len(peaks)} lines in {wav_path}")

        gram_path = Path(f"{prefix}_gram.pgm")
        render_demon_gram(gram, gram_path)
        features_path = write_feature_table(
            build_feature_table([feature_row(wav_path, -1, None, features)]),
            Path(f"{prefix}_features.csv"),
        )
        return {
            "spectrum": spectrum_path,
            "peaks": peaks_path,
            "gram": gram_path,
            "gram_metadata": gram_path.with_suffix(".txt"),
            "features": features_path,
        }

    # Training and inference

    def train(
        self,
        manifest_path: PathLike,
        config: CascadeConfig,
        model_out: PathLike,
        split_out: Optional[PathLike] = None,
    ) -> CascadeFit:
        """Train a cascade on a manifest and save it."""
        manifest = self.load_dataset(manifest_path)
        self.describe(manifest, config.refine_category)

        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            console=console,
            disable=not self.show_progress,
        ) as progress:
            stages = 1 if config.refine_category is None else 2
            task = progress.add_task(
                "Training cascade...", total=stages * config.train.epochs
            )
            fit = fit_cascade(
                manifest.feature_table(),
                config,
                on_epoch=lambda *_: progress.advance(task),
            )

        model_path = Path(model_out)
        _ensure_parent(model_path)
        save_model(fit.model, model_path)
        if split_out is not None:
            split_path = Path(split_out)
            _ensure_parent(split_path)
            split = manifest.with_split(fit.train_index, fit.val_index)
            write_manifest(split, split_path)

        console.print(
            f"✅ [bold green]Coarse best val accuracy "
            f"{fit.coarse_history.best_val_accuracy:.3f} "
            f"(epoch {fit.coarse_history.best_epoch})[/bold green]"
        )
        if fit.fine_history is not None:
            console.print(
                f"✅ [bold green]Fine best val accuracy "
                f"{fit.fine_history.best_val_accuracy:.3f} "
                f"(epoch {fit.fine_history.best_epoch})[/bold green]"
            )
        return fit

    def predict(
        self, model_path: PathLike, input_path: PathLike
    ) -> List[Tuple[Optional[str], Prediction]]:
        """
        Predict a WAV file or every row of a feature/audio manifest CSV.

        Returns:
            ``(path, prediction)`` pairs; the path is ``None`` for a single WAV
        """
        cascade = load_model(model_path)
        source = Path(input_path)
        if source.suffix.lower() == ".wav":
            _, features = self.extractor.analyze_file(source)
            return [(None, cascade.predict_many(features.to_vector())[0])]

        table = self.load_dataset(source).feature_table()
        predictions = cascade.predict_many(feature_matrix(table))
        return list(zip(table["path"].tolist(), predictions))

    # Evaluation

    def _select_subset(self, manifest: DatasetManifest, subset: str) -> DatasetManifest:
        if subset not in SUBSETS:
            raise ContractError(f"Unknown subset '{subset}', use one of {SUBSETS}")
        selected = manifest if subset == "all" else manifest.select_split(subset)
        if len(selected) == 0:
            raise ContractError(f"No rows in subset '{subset}'")
        return selected

    def evaluate(
        self,
        model_path: PathLike,
        manifest_path: PathLike,
        report_prefix: PathLike,
        subset: str = "all",
        formats: Sequence[str] = ("csv",),
    ) -> Tuple[Metrics, Optional[Metrics], Dict[str, Path]]:
        """Evaluate a saved cascade and write reports under ``report_prefix``."""
        cascade = load_model(model_path)
        manifest = self._select_subset(self.load_dataset(manifest_path), subset)
        self.describe(manifest, cascade.refine_category)

        coarse, fine = evaluate(cascade, manifest)
        prefix = Path(report_prefix)
        report = EvaluationReport(
            name=prefix.name,
            coarse=coarse,
            fine=fine,
            metadata={
                "model": str(model_path),
                "manifest": str(manifest_path),
                "subset": subset,
                "rows": len(manifest),
            },
        )
        manager = self.report_manager or ReportManager(str(prefix.parent))
        generated = manager.generate_multiple_reports(report, list(formats))
        manager.display_report_summary(generated)
        return coarse, fine, generated

    def sweep(
        self,
        manifest_path: PathLike,
        widths: Sequence[int],
        config: CascadeConfig,
        report_prefix: PathLike,
    ) -> Tuple[SweepResult, Dict[str, Path]]:
        """Train one cascade per hidden width on a shared split and report them."""
        manifest = self.load_dataset(manifest_path)
        self.describe(manifest, config.refine_category)

        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            console=console,
            disable=not self.show_progress,
        ) as progress:
            task = progress.add_task("Sweeping hidden widths...", total=len(widths))
            result = sweep_hidden_widths(
                manifest,
                widths,
                config,
                on_width=lambda width: progress.update(
                    task, description=f"Training width {width}..."
                ),
            )
            progress.update(task, completed=len(widths))

        prefix = Path(report_prefix)
        _ensure_parent(prefix)
        paths = write_sweep_report(result, prefix)
        logger.info(f"Sweep over widths {result.widths} written with prefix {prefix}")
        return result, paths
