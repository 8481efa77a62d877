"""Exception hierarchy. Every domain error derives from :class:`CurvtopoError`."""


class CurvtopoError(Exception):
    """Base class for all domain errors raised by the package."""

    @property
    def name(self):
        return type(self).__name__


class InvalidSpace(CurvtopoError, ValueError):
    pass


class NonSquareInput(CurvtopoError, ValueError):
    pass


class IndexOutOfRange(CurvtopoError, IndexError):
    pass


class UnsupportedMode(CurvtopoError, ValueError):
    pass


class EmptyFamily(CurvtopoError, ValueError):
    pass


class NonPositiveWeight(CurvtopoError, ValueError):
    pass


class TriangleInequalityViolated(CurvtopoError, ValueError):
    pass


class DegenerateAllZero(CurvtopoError, ValueError):
    pass


class DegenerateTriple(CurvtopoError, ValueError):
    pass


class DegenerateTuple(CurvtopoError, ValueError):
    pass


class UnrealizableAngles(CurvtopoError, ValueError):
    pass


class NotEquilateral(CurvtopoError, ValueError):
    pass


class DomainMismatch(CurvtopoError, ValueError):
    pass


class NotAdmissible(CurvtopoError, ValueError):
    pass


class NoConvergence(CurvtopoError, RuntimeError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class SampleTooSmall(CurvtopoError, ValueError):
    pass


class InvalidFiltration(CurvtopoError, ValueError):
    pass


class TooLarge(CurvtopoError, ValueError):
    pass


class MismatchedBases(CurvtopoError, ValueError):
    pass


class DegenerateLeak(CurvtopoError, ValueError):
    pass
