"""Exact toughness, adjacency spectra and spectral toughness bounds for regular graphs."""

__version__ = "0.1.0"
