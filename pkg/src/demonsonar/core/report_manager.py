"""Report management following Single Responsibility Principle."""

from pathlib import Path
from typing import Dict, List, Optional, Type

from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn

from ..reports import (
    CSVReportGenerator,
    EvaluationReport,
    JSONReportGenerator,
    SummaryReportGenerator,
)
from ..reports.base import ReportGenerator

console = Console(stderr=True)

GENERATORS: Dict[str, Type[ReportGenerator]] = {
    "csv": CSVReportGenerator,
    "json": JSONReportGenerator,
    "txt": SummaryReportGenerator,
}


class ReportManager:
    """
    Manages report generation following Single Responsibility Principle.

    Only responsible for generating reports - does not handle training or evaluation.
    File names derive from the report name alone so reruns overwrite identically.
    """

    def __init__(self, output_dir: str = "reports"):
        """Initialize report manager."""
        self.output_dir = Path(output_dir)

    def generate_single_report(
        self, report: EvaluationReport, format_type: str
    ) -> Path:
        """
        Generate a single report in specified format.

        Args:
            report: Evaluation to render
            format_type: 'csv', 'json', or 'txt'

        Returns:
            Path to generated report
        """
        if format_type not in GENERATORS:
            raise ValueError(
                f"Unsupported format: {format_type}. Use: {list(GENERATORS.keys())}"
            )
        generator = GENERATORS[format_type](self.output_dir)
        return generator.generate_report(report)

    def generate_multiple_reports(
        self, report: EvaluationReport, formats: Optional[List[str]] = None
    ) -> Dict[str, Path]:
        """
        Generate reports in several formats.

        Args:
            report: Evaluation to render
            formats: Formats to generate; all of them when empty

        Returns:
            Dictionary mapping format to file path
        """
        if not formats:
            formats = list(GENERATORS.keys())

        generated_reports = {}
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=console,
        ) as progress:
            task = progress.add_task(
                f"Generating {len(formats)} report(s)...", total=len(formats)
            )
            for format_type in formats:
                generated_reports[format_type] = self.generate_single_report(
                    report, format_type
                )
                progress.advance(task)

        return generated_reports

    def display_report_summary(self, generated_reports: Dict[str, Path]):
        """Display summary of generated reports."""
        if generated_reports:
            console.print("✅ [bold green]Reports generated successfully![/bold green]")
            for format_type, file_path in generated_reports.items():
                console.print(f"  📁 {format_type.upper()}: [cyan]{file_path}[/cyan]")
        else:
            console.print("❌ [bold red]No reports were generated[/bold red]")
