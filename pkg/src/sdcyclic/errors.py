"""Exception hierarchy shared by every module of the package."""


class SDCyclicError(Exception):
    """Base class for all package errors."""


# field / polynomial arithmetic
class UnsupportedDegree(SDCyclicError, ValueError):
    pass


class ModulusNotIrreducible(SDCyclicError, ValueError):
    pass


class ZeroGcd(SDCyclicError, ValueError):
    pass


class ZeroConstantTerm(SDCyclicError, ValueError):
    pass


class PolyParseError(SDCyclicError, ValueError):
    pass


# factorization
class EvenLengthNotCoprime(SDCyclicError, ValueError):
    pass


class ClassificationInvariantBroken(SDCyclicError, AssertionError):
    pass


# quotient rings and traces
class XNotInvertible(SDCyclicError, ValueError):
    pass


class TraceUndefined(SDCyclicError, ValueError):
    pass


class NotInSubfield(SDCyclicError, ValueError):
    pass


# omega sets
class NotSelfReciprocalFactor(SDCyclicError, ValueError):
    pass


class ThmAssumptionViolated(SDCyclicError, AssertionError):
    """An intermediate value left the subfield it must lie in; signals an arithmetic bug."""


# code enumeration
class ChoiceShapeMismatch(SDCyclicError, ValueError):
    pass


class ClosedFormUnavailable(SDCyclicError, ValueError):
    pass


# verification
class ShapeError(SDCyclicError, ValueError):
    pass


class NotSelfDual(SDCyclicError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GrayPropertyViolated(SDCyclicError):
    pass


class TooLargeForExhaustive(SDCyclicError, ValueError):
    pass
