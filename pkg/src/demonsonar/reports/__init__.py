"""Report generators for cascade evaluations."""

from .base import EvaluationReport, ReportGenerator, metrics_summary
from .csv_report import (
    CSVReportGenerator,
    confusion_frame,
    confusion_heatmap,
    fine_by_width_frame,
    metrics_frame,
    sweep_frame,
    write_report,
    write_sweep_report,
)
from .json_report import JSONReportGenerator
from .summary_report import SummaryReportGenerator

__all__ = [
    "CSVReportGenerator",
    "EvaluationReport",
    "JSONReportGenerator",
    "ReportGenerator",
    "SummaryReportGenerator",
    "confusion_frame",
    "confusion_heatmap",
    "fine_by_width_frame",
    "metrics_frame",
    "metrics_summary",
    "sweep_frame",
    "write_report",
    "write_sweep_report",
]
