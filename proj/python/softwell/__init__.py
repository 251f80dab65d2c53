"""Nonlinear softening indicators for noisy time series."""

try:
    from ._softwell import *  # noqa: F401,F403
    from ._softwell import __doc__  # noqa: F401
except ImportError:  # in-tree builds put the extension next to the package
    from _softwell import *  # noqa: F401,F403
