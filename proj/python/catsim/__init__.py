"""Correlation functions of a kicked particle on a ring coupled to small
scatterers: split-step Floquet propagation, position autocorrelation and
out-of-time-order correlators, with classical references and scaling fits.
"""

try:
    from ._catsim import *  # noqa: F401,F403
    from ._catsim import __version__  # noqa: F401
except ImportError:  # running against an in-tree build dir on PYTHONPATH
    from _catsim import *  # noqa: F401,F403
    from _catsim import __version__  # noqa: F401
