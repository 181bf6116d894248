"""Formal smoothness of discrete valuation rings in characteristic p."""

__version__ = "0.1.0"
