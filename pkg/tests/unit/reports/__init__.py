"""Tests for reports module."""
