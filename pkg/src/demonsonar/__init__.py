"""DEMON envelope analysis and cascaded vessel classification toolkit."""

__version__ = "0.1.0"
