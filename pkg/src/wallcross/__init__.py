"""Exact Bridgeland wall geometry for line bundles on surfaces."""
from .errors import *  # noqa: F401,F403
from .lattice import *  # noqa: F401,F403
from .chern import *  # noqa: F401,F403
from .charge import *  # noqa: F401,F403
from .walls import *  # noqa: F401,F403
from .scan import *  # noqa: F401,F403
from .surd import Surd

__version__ = "0.1.0"
