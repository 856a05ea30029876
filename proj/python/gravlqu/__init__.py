"""Thermal local quantum uncertainty of two gravitational cat qubits."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
