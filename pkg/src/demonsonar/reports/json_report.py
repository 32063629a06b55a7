"""JSON report generator for cascade evaluations."""

import json
from pathlib import Path

from .base import EvaluationReport, ReportGenerator


class JSONReportGenerator(ReportGenerator):
    """Generates JSON reports from evaluation metrics."""

    extension = ".json"

    def generate_report(self, report: EvaluationReport) -> Path:
        """Generate JSON report from evaluation metrics."""
        report_data = {
            "report": {
                "name": report.name,
                "metadata": report.metadata,
                **self._analyze_results(report),
            }
        }

        # No timestamp: reruns must produce identical files
        output_path = self._output_path(report, "_report")
        content = json.dumps(report_data, indent=2, ensure_ascii=False, default=str)
        return self._write_text(output_path, content + "\n")
