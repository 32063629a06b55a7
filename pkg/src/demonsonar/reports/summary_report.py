"""Summary report generator for cascade evaluations."""

from pathlib import Path
from typing import List

from ..evaluation import Metrics
from .base import EvaluationReport, ReportGenerator


class SummaryReportGenerator(ReportGenerator):
    """Generates concise text summaries of evaluation metrics."""

    extension = ".txt"

    def generate_report(self, report: EvaluationReport) -> Path:
        """Generate summary text report from evaluation metrics."""
        content = self._create_summary_content(report)
        return self._write_text(self._output_path(report, "_summary"), content)

    def _create_summary_content(self, report: EvaluationReport) -> str:
        """Create summary report content."""
        lines = [
            "🔊 DEMON CASCADE EVALUATION SUMMARY",
            "=" * 50,
            "",
            f"Report: {report.name}",
        ]
        for key, value in report.metadata.items():
            lines.append(f"{key}: {value}")
        lines.append("")

        lines += self._stage_section("COARSE STAGE (vessel category)", report.coarse)
        if report.fine is not None:
            lines += self._stage_section("FINE STAGE (vessel model)", report.fine)
        return "\n".join(lines) + "\n"

    def _stage_section(self, title: str, metrics: Metrics) -> List[str]:
        lines = [
            f"📊 {title}",
            "-" * (len(title) + 3),
            f"Evaluated:        {metrics.confusion.total}",
            f"Overall accuracy: {metrics.overall_accuracy:.3f} "
            f"{self._get_status_indicator(metrics.overall_accuracy)}",
        ]
        if metrics.routed_accuracy is not None:
            lines.append(f"Routed accuracy:  {metrics.routed_accuracy:.3f}")
        lines.append("")
        for c, (acc, n) in enumerate(zip(metrics.per_class_accuracy, metrics.support)):
            note = "" if n else "  (no samples)"
            lines.append(f"  class {c:2}  {acc:6.3f}  n={n:<4}{note}")
        lines.append("")
        return lines

    def _get_status_indicator(self, accuracy: float) -> str:
        """Get status indicator based on accuracy."""
        if accuracy >= 0.9:
            return "✅"
        elif accuracy >= 0.7:
            return "⚠️"
        else:
            return "❌"
