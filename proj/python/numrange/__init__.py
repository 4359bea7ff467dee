from numrange._core import *  # noqa: F401,F403
from numrange._core import __doc__, __version__  # noqa: F401
