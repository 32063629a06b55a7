"""CSV and PGM renderings of metrics and sweeps."""

from pathlib import Path
from typing import Dict, Union

import numpy as np
import pandas as pd
from loguru import logger

from ..demon import quantize_pixels, write_pgm
from ..evaluation import Metrics, SweepResult
from ..exceptions import ArtifactIOError
from .base import EvaluationReport, ReportGenerator

PathPrefix = Union[str, Path]


def _with_suffix(prefix: PathPrefix, suffix: str) -> Path:
    return Path(f"{prefix}{suffix}")


def _to_csv(df: pd.DataFrame, path: Path) -> Path:
    try:
        df.to_csv(path, index=False)
    except OSError as e:
        raise ArtifactIOError(path, f"cannot write CSV: {e.strerror or e}") from e
    return path


def _number(value: float) -> str:
    return repr(float(value))


def confusion_frame(metrics: Metrics) -> pd.DataFrame:
    """Confusion grid with class ids as the first column and header."""
    confusion = metrics.confusion
    df = pd.DataFrame(confusion.counts, columns=confusion.column_labels)
    df.insert(0, "class", [str(c) for c in range(confusion.n_classes)])
    return df


def metrics_frame(metrics: Metrics) -> pd.DataFrame:
    """Per-class accuracy rows, then ``overall`` (and ``routed``, ``footnote``)."""
    rows = [
        {
            "class": str(c),
            "accuracy": _number(acc),
            "support": int(n),
            "note": "" if n else "no samples",
        }
        for c, (acc, n) in enumerate(zip(metrics.per_class_accuracy, metrics.support))
    ]
    rows.append(
        {
            "class": "overall",
            "accuracy": _number(metrics.overall_accuracy),
            "support": metrics.confusion.total,
            "note": "",
        }
    )
    if metrics.routed_accuracy is not None:
        routed = metrics.confusion.total
        if metrics.confusion.has_bucket:
            routed -= int(metrics.confusion.counts[:, -1].sum())
        rows.append(
            {
                "class": "routed",
                "accuracy": _number(metrics.routed_accuracy),
                "support": routed,
                "note": "fine accuracy over rows routed to the fine network",
            }
        )
    if metrics.empty_classes:
        empty = " ".join(str(c) for c in metrics.empty_classes)
        rows.append(
            {
                "class": "footnote",
                "accuracy": "",
                "support": "",
                "note": f"classes {empty} have no samples; accuracy written as 0",
            }
        )
    return pd.DataFrame(rows, columns=["class", "accuracy", "support", "note"])


def confusion_heatmap(metrics: Metrics) -> np.ndarray:
    """Row-normalized confusion as 8-bit pixels, 255 at each row maximum."""
    counts = metrics.confusion.counts.astype(np.float64)
    peaks = counts.max(axis=1, keepdims=True)
    scaled = np.divide(counts, peaks, out=np.zeros_like(counts), where=peaks > 0)
    return quantize_pixels(scaled)


def write_report(metrics: Metrics, path_prefix: PathPrefix) -> Dict[str, Path]:
    """Write the confusion CSV, the metrics CSV and the confusion heatmap PGM."""
    confusion_path = _with_suffix(path_prefix, "_confusion.csv")
    metrics_path = _with_suffix(path_prefix, "_metrics.csv")
    heatmap_path = _with_suffix(path_prefix, "_confusion.pgm")
    paths = {
        "confusion": _to_csv(confusion_frame(metrics), confusion_path),
        "metrics": _to_csv(metrics_frame(metrics), metrics_path),
        "heatmap": write_pgm(confusion_heatmap(metrics), heatmap_path),
    }
    logger.debug(f"Metrics report written with prefix {path_prefix}")
    return paths


def sweep_frame(sweep: SweepResult) -> pd.DataFrame:
    """One row per width: coarse per-class and overall accuracy, fine overall."""
    rows = []
    for result in sweep.results:
        row = {"hidden_width": result.hidden_width}
        for c, acc in enumerate(result.coarse.per_class_accuracy):
            row[f"coarse_{c}"] = _number(acc)
        row["coarse_overall"] = _number(result.coarse.overall_accuracy)
        if result.fine is not None:
            row["fine_overall"] = _number(result.fine.overall_accuracy)
            row["fine_routed"] = _number(result.fine.routed_accuracy or 0.0)
        rows.append(row)
    return pd.DataFrame(rows)


def fine_by_width_frame(sweep: SweepResult) -> pd.DataFrame:
    """Rows = fine classes plus ``overall``, columns = widths."""
    refined = [r for r in sweep.results if r.fine is not None]
    if not refined:
        return pd.DataFrame(columns=["class"])
    n_fine = refined[0].fine.confusion.n_classes
    df = pd.DataFrame({"class": [str(c) for c in range(n_fine)] + ["overall"]})
    for result in refined:
        values = list(result.fine.per_class_accuracy) + [result.fine.overall_accuracy]
        df[f"w{result.hidden_width}"] = [_number(v) for v in values]
    return df


def write_sweep_report(sweep: SweepResult, path_prefix: PathPrefix) -> Dict[str, Path]:
    """Write the sweep tables plus per-width confusion reports."""
    paths = {
        "sweep": _to_csv(sweep_frame(sweep), _with_suffix(path_prefix, "_sweep.csv")),
        "fine_by_width": _to_csv(
            fine_by_width_frame(sweep), _with_suffix(path_prefix, "_fine_by_width.csv")
        ),
    }
    for result in sweep.results:
        stem = f"{path_prefix}_w{result.hidden_width}"
        for key, path in write_report(result.coarse, f"{stem}_coarse").items():
            paths[f"w{result.hidden_width}_coarse_{key}"] = path
        if result.fine is not None:
            for key, path in write_report(result.fine, f"{stem}_fine").items():
                paths[f"w{result.hidden_width}_fine_{key}"] = path
    return paths


class CSVReportGenerator(ReportGenerator):
    """Writes the CSV/PGM trio for each cascade stage."""

    extension = ".csv"

    def generate_report(self, report: EvaluationReport) -> Path:
        """Generate the report files; returns the coarse metrics CSV path."""
        prefix = self.output_dir / report.name
        coarse = write_report(report.coarse, f"{prefix}_coarse")
        if report.fine is not None:
            write_report(report.fine, f"{prefix}_fine")
        return coarse["metrics"]
