"""Retweet-network construction and exponential random graph models.

The compiled extension ``rtergm._core`` holds the implementation; this package
re-exports it.
"""

from ._core import *  # noqa: F401,F403
from ._core import RtergmError, __doc__  # noqa: F401

__version__ = "0.1.0"
