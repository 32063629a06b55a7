"""Tests for data quality tool."""
