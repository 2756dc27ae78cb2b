"""Malnormality of knot peripheral subgroups."""

__version__ = "0.1.0"
