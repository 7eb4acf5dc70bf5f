"""Relativistic quark-antiquark bound states in the vector (1^-) channel.

Solves the instantaneous Bethe-Salpeter equation with a regularized
linear-plus-one-gluon-exchange kernel and computes mass spectra and
leptonic decay constants for heavy vector mesons.
"""

__version__ = "1.0.0"

from .channels import CHANNELS, Channel, resolve_channel
from .potential import PotentialParams
from .solver import SpectrumResult, converge, solve_channel

__all__ = [
    "CHANNELS",
    "Channel",
    "resolve_channel",
    "PotentialParams",
    "SpectrumResult",
    "solve_channel",
    "converge",
    "__version__",
]
