"""Constructive star coloring of sparse graphs via forest/independent-set partitions."""

__version__ = "0.1.0"
