"""Canonical invariants of rank-4 distributions on 6-dimensional charts."""

try:
    from ._levi6 import *  # noqa: F401,F403
except ImportError:  # in-tree use: module built next to the package
    from _levi6 import *  # noqa: F401,F403
