"""Differential-linear distinguisher toolkit for Simon and Simeck ciphers."""

from .cipher import CipherSpec, get_spec

__version__ = "0.1.0"
__all__ = ["CipherSpec", "get_spec", "__version__"]
