"""Reachable-set meshing and stability analysis for disturbed, policy-controlled
dynamical systems: box meshes of the reachable state space, absorbing Markov
chain passage times, box-counting dimensions, and ARS policy training."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
