"""MOEA/AD: a dual-population decomposition algorithm for many-objective problems, with MOEA/D baselines."""

__version__ = "0.1.0"
