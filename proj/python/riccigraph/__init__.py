"""Exact Ollivier-Ricci curvature and curvature-dimension analysis on graphs.

All curvature quantities come back as exact ``fractions.Fraction`` values;
floating point appears only where an eigenvalue is being approximated.
"""

from ._riccigraph import *  # noqa: F401,F403
from ._riccigraph import __doc__ as _core_doc

__doc__ = _core_doc if _core_doc else __doc__
