"""Commutator-norm bound curves for functions of unitaries and positive contractions."""

from ._core import *  # noqa: F401,F403
from ._core import BoundViolation, CommboundError, __doc__  # noqa: F401

__version__ = "0.1.0"
