"""Reconstruction limits for sequence multisets from k-mer unions."""

from krec._core import *  # noqa: F401,F403
from krec._core import __version__  # noqa: F401
