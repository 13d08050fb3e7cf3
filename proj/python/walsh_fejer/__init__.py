"""Walsh-Paley analysis on the dyadic group with exact rational arithmetic."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
