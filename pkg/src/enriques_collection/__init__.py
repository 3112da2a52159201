"""Exact verification of an exceptional collection of 13 line bundles on a
smoothed Enriques-type surface, via glued intersection numbers and plane
fat-point interpolation ranks."""

__version__ = "0.1.0"
