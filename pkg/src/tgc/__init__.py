"""Axiomatic theory graphs over a small first-order kernel."""

__version__ = "0.1.0"
