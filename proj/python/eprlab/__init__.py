"""Quantum two-party correlators and their local hidden-variable representations."""

from ._eprlab import *  # noqa: F401,F403
from ._eprlab import __doc__  # noqa: F401
