"""Adiabatic elimination for the Dicke model.

Thin Python layer over the C++ core: operator construction on the truncated
boson x collective-spin space, generator solving, closed-form effective
Hamiltonians, Wegner flow and spectral comparisons.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
