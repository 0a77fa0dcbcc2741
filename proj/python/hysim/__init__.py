"""Generalized-play hysteresis simulation toolkit."""

from ._hysim import *  # noqa: F401,F403
from ._hysim import __version__  # noqa: F401
