"""Dataset overview following Single Responsibility Principle."""

from typing import Any, Dict, Optional

from loguru import logger
from rich.console import Console
from rich.table import Table

from ..audio import wav_duration
from ..evaluation import DatasetManifest
from ..exceptions import AudioFormatError


class DatasetOverview:
    """
    Summarizes a labeled dataset.

    Only responsible for describing the data - does not extract, train or report.
    """

    @staticmethod
    def calculate_overview(
        manifest: DatasetManifest, refine_category: Optional[int] = 1
    ) -> Dict[str, Any]:
        """
        Count rows per class and, for audio manifests, total recorded time.

        Args:
            manifest: Dataset to describe
            refine_category: Coarse class whose fine labels are counted

        Returns:
            Dictionary containing the overview
        """
        rows = manifest.rows
        coarse_counts = rows["label_coarse"].value_counts().sort_index()
        overview: Dict[str, Any] = {
            "row_count": len(rows),
            "coarse_counts": {int(k): int(v) for k, v in coarse_counts.items()},
            "has_features": manifest.has_features,
            "refine_category": refine_category,
            "refine_count": 0,
            "fine_counts": {},
            "audio_seconds": None,
        }
        if refine_category is not None:
            refine = rows[rows["label_coarse"] == refine_category]
            fine_counts = refine["label_fine"].value_counts().sort_index()
            overview["refine_count"] = len(refine)
            overview["fine_counts"] = {int(k): int(v) for k, v in fine_counts.items()}

        if not manifest.has_features:
            try:
                overview["audio_seconds"] = sum(
                    wav_duration(path) for path in manifest.audio_paths()
                )
            except (OSError, AudioFormatError) as e:
                logger.debug(f"Audio duration unavailable: {e}")
        return overview

    @staticmethod
    def display_overview(overview: Dict[str, Any], console: Console):
        """Display the overview in a user-friendly format."""
        console.print("📊 [bold]Dataset Overview[/bold]")
        console.print(f"   • Rows: {overview['row_count']:,}")
        if overview["audio_seconds"] is not None:
            console.print(f"   • Audio: {overview['audio_seconds']:.1f} s")
        if overview["refine_category"] is not None:
            console.print(
                f"   • Category {overview['refine_category']} rows: "
                f"{overview['refine_count']:,}"
            )

        table = Table(title="Samples per class")
        table.add_column("Stage", style="cyan")
        table.add_column("Class", justify="right")
        table.add_column("Rows", style="magenta", justify="right")
        for label, count in overview["coarse_counts"].items():
            table.add_row("coarse", str(label), str(count))
        for label, count in overview["fine_counts"].items():
            table.add_row("fine", str(label), str(count))
        console.print(table)
