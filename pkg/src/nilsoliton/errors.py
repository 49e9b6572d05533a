"""Exception hierarchy used across the package."""


class NilsolitonError(Exception):
    """Base class for every error raised by this package."""


class UnsupportedSystem(NilsolitonError):
    pass


class ProportionalRoots(NilsolitonError):
    pass


class MultiplicitiesUnset(NilsolitonError):
    pass


class DimensionError(NilsolitonError):
    pass


class NotASubalgebra(NilsolitonError):
    """Raised when a span is not closed under the bracket.

    ``witness`` holds the offending pair of basis indices.
    """

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class ConstructionError(NilsolitonError):
    pass


class UnsupportedRealForm(NilsolitonError):
    pass


class MaximalityFailure(NilsolitonError):
    pass


class NumericalDegeneracy(NilsolitonError):
    pass


class StructureMismatch(NilsolitonError):
    pass


class InvalidSpec(NilsolitonError):
    pass


class DegenerateDimension(NilsolitonError):
    pass


class NotTangent(NilsolitonError):
    pass


class CrossCheckFailure(NilsolitonError):
    pass


class CatalogMismatch(NilsolitonError):
    """A verified catalog entry disagreed with its expected verdict."""

    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report
