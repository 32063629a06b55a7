"""Base classes for evaluation reports."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

from ..evaluation import Metrics
from ..exceptions import ArtifactIOError


@dataclass(frozen=True)
class EvaluationReport:
    """Everything a report shows about one evaluation run."""

    name: str
    coarse: Metrics
    fine: Optional[Metrics] = None
    metadata: Dict[str, Any] = field(default_factory=dict)


def metrics_summary(metrics: Metrics) -> Dict[str, Any]:
    """Plain-data view of a metrics object."""
    summary: Dict[str, Any] = {
        "overall_accuracy": metrics.overall_accuracy,
        "evaluated": metrics.confusion.total,
        "per_class": [
            {"class": c, "accuracy": float(acc), "support": int(n)}
            for c, (acc, n) in enumerate(
                zip(metrics.per_class_accuracy, metrics.support)
            )
        ],
        "empty_classes": metrics.empty_classes,
        "confusion": {
            "columns": metrics.confusion.column_labels,
            "counts": metrics.confusion.counts.tolist(),
        },
    }
    if metrics.routed_accuracy is not None:
        summary["routed_accuracy"] = metrics.routed_accuracy
    return summary


class ReportGenerator(ABC):
    """Abstract base class for report generators."""

    extension = ""

    def __init__(self, output_dir: Optional[Path] = None):
        """Initialize report generator."""
        self.output_dir = Path(output_dir) if output_dir is not None else Path(".")
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ArtifactIOError(
                self.output_dir, f"cannot create directory: {e.strerror or e}"
            ) from e

    @abstractmethod
    def generate_report(self, report: EvaluationReport) -> Path:
        """Generate a report and return its path."""
        pass

    def _output_path(self, report: EvaluationReport, suffix: str) -> Path:
        return self.output_dir / f"{report.name}{suffix}{self.extension}"

    def _write_text(self, path: Path, content: str) -> Path:
        try:
            path.write_text(content, encoding="utf-8")
        except OSError as e:
            raise ArtifactIOError(
                path, f"cannot write report: {e.strerror or e}"
            ) from e
        return path

    def _analyze_results(self, report: EvaluationReport) -> Dict[str, Any]:
        """Summary statistics of both cascade stages."""
        analysis: Dict[str, Any] = {"coarse": metrics_summary(report.coarse)}
        if report.fine is not None:
            analysis["fine"] = metrics_summary(report.fine)
        return analysis
