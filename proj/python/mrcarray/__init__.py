"""Resonant modes and impedance spectra of magnetically coupled LC coil arrays."""

from ._core import *  # noqa: F401,F403
from ._core import MrcError

__all__ = [name for name in dir() if not name.startswith("_")]
