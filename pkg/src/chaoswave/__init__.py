"""Chaos-based grayscale image cipher in the Haar wavelet domain."""

from .chaos import ChaosEngine, ParameterError, SecretKey
from .pipeline import CipherBlob, ContainerError, decrypt, encrypt, shuffled_preview

__all__ = [
    "ChaosEngine",
    "CipherBlob",
    "ContainerError",
    "ParameterError",
    "SecretKey",
    "decrypt",
    "encrypt",
    "shuffled_preview",
]
__version__ = "0.1.0"
