"""Dirichlet solver for the stationary bipartite wave equation
(-Lap_x + Lap_y) Phi = 0 on box domains.

Thin python layer over the C++ core: anti-inner-product algebra, spectral
and Galerkin weak solves with degeneracy diagnostics, spectral time
evolution, and CSV field I/O.
"""

from vnlw._core import *  # noqa: F401,F403
from vnlw._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
