"""Python bindings for the sbmwalk C++ core."""

from ._core import *  # noqa: F401,F403
from ._core import CSV_HEADER, __doc__  # noqa: F401
