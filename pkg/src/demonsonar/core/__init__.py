"""Workflow components: extraction, dataset overview, reporting and orchestration."""

from .dataset_overview import DatasetOverview
from .feature_extractor import FeatureExtractor, extract_feature_table
from .orchestrator import DemonSonarOrchestrator
from .report_manager import ReportManager

__all__ = [
    "DatasetOverview",
    "DemonSonarOrchestrator",
    "FeatureExtractor",
    "ReportManager",
    "extract_feature_table",
]
