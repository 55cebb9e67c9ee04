"""Exact computations with tilted hearts of torsion pairs over the integers."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
