"""Permuted autoregressive word recognition for Urdu text images."""

__version__ = "0.1.0"
