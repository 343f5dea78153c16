"""Normal forms, matrix representations and classification for the algebra A(R)."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
