"""Energetics and entanglement of two-qubit states.

Thin Python layer over the C++ library. Density matrices are exchanged as
4x4 complex numpy arrays; ensembles as lists of ``(weight, PureState2Q)``.
"""

from ._core import *  # noqa: F401,F403
from ._core import QqeError, __doc__  # noqa: F401
