"""Logarithmic-space Kolakoski sequence streaming and exact digit census.

The heavy lifting lives in the C++ extension module `_kolaseq`; this package
re-exports its surface.
"""

try:
    from ._kolaseq import *  # noqa: F401,F403  (installed layout)
    from ._kolaseq import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension sits on PYTHONPATH
    from _kolaseq import *  # noqa: F401,F403
    from _kolaseq import __version__  # noqa: F401
