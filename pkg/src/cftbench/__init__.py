"""Exact computational workbench for modular data, modular invariants, nimreps and charge groups."""

__version__ = "0.1.0"
