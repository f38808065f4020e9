"""Explicit Markov chain Monte Carlo error bounds and certification."""

try:
    from ._mcerr import *  # noqa: F401,F403
except ImportError:  # extension on sys.path rather than inside the package
    from _mcerr import *  # noqa: F401,F403
