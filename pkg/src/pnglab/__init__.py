"""Polynuclear growth, random matrices and Tracy-Widom laws at desk scale."""

__version__ = "0.1.0"

from .rng import Seed  # noqa: E402

__all__ = ["Seed", "__version__"]
