"""Exception hierarchy shared by every rowcox module."""

from __future__ import annotations


class RowcoxError(Exception):
    """Base class for all errors raised by rowcox."""


# -- posets -----------------------------------------------------------------

class PosetError(RowcoxError, ValueError):
    pass


class CycleDetected(PosetError):
    pass


class DuplicateLabel(PosetError):
    pass


class NonCoverEdge(PosetError):
    pass


class UnknownElement(PosetError, KeyError):
    pass


class NotAnAntichain(PosetError):
    pass


class NotAnOrderIdeal(PosetError):
    pass


class NotDistributive(PosetError):
    pass


class SizeLimitExceeded(RowcoxError):
    pass


# -- exact linear algebra ---------------------------------------------------

class LinalgError(RowcoxError, ValueError):
    pass


class NonSquare(LinalgError):
    pass


class Singular(LinalgError):
    pass


class DimensionMismatch(LinalgError):
    pass


# -- algebras and modules ---------------------------------------------------

class AlgebraError(RowcoxError):
    pass


class UnknownVertex(AlgebraError, KeyError):
    pass


class AlgebraMismatch(AlgebraError, ValueError):
    pass


class InvalidRepresentation(AlgebraError, ValueError):
    pass


class ZeroModule(AlgebraError, ValueError):
    pass


class NotAuslanderRegular(AlgebraError):
    pass


class ConventionMismatch(AlgebraError):
    """Two independent routes to the same matrix disagreed (an engine bug)."""


class NonSimpleTop(AlgebraError):
    """D Ext^g(S, A) did not have a simple top (an engine bug)."""


# -- Dynkin / Auslander algebra data -----------------------------------------

class InvalidType(RowcoxError, ValueError):
    pass


class NonDynkin(RowcoxError):
    pass


class CoxeterCrossCheckFailed(RowcoxError):
    pass


class NotBijective(RowcoxError):
    pass


class MalformedData(RowcoxError, ValueError):
    pass


# -- input files ------------------------------------------------------------

class ParseError(RowcoxError, ValueError):
    pass
