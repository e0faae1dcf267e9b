"""Projection pair range conditions for pairs of tomographic projections."""

from ._pprc import *  # noqa: F401,F403
from ._pprc import presets  # noqa: F401

__version__ = "0.1.0"
