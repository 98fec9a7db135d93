"""Exact computations around operadic Hochschild homology.

Modules: ``exactlin`` (sparse exact linear algebra), ``dgmod`` (graded
modules and chain maps), ``simplicial`` (total complexes, normalization,
shuffles), ``sset`` (finite simplicial sets), ``operads`` (A, C and the
Barratt-Eccles operad), ``oalg`` (free algebras), ``hochschild``,
``loopmodel`` and ``cli``.
"""
__version__ = "0.1.0"

from .errors import (CompositionNotZero, DSquareNonzero, MixingDetected, NotClosed,  # noqa: F401
                     NotSimplyConnectedProxy, OphhError, ParseError, SizeLimitExceeded)
from .exactlin import BACKEND, Field, Q, SparseMatrix, rank  # noqa: F401
