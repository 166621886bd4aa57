"""Characteristic double-null evolution of the coupled Einstein-Dirac
system in the Newman-Penrose / T-weight formalism."""

__version__ = "0.1.0"
