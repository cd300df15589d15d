"""Exception hierarchy shared by every module of the package."""


class JacsyzError(Exception):
    """Base class for all errors raised by jacsyz."""


class ParseError(JacsyzError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at column {position + 1})"
        super().__init__(message)


class NotHomogeneous(JacsyzError):
    def __init__(self, term, expected_degree):
        self.term = term
        self.expected_degree = expected_degree
        super().__init__(f"term {term} is not of degree {expected_degree}")


class NotReduced(JacsyzError):
    pass


class NotDivisible(JacsyzError):
    pass


class ZeroRestriction(JacsyzError):
    pass


class LineIsComponent(JacsyzError):
    pass


class BadPrime(JacsyzError):
    pass


class NotStabilized(JacsyzError):
    pass


class SymmetryViolation(JacsyzError):
    pass


class UnimodalityViolation(JacsyzError):
    pass


class BoundTooSmall(JacsyzError):
    pass


class InconsistentProfile(JacsyzError):
    pass


class PointNotOnCurve(JacsyzError):
    pass


class NonIsolated(JacsyzError):
    pass


class SharedComponent(JacsyzError):
    pass


class NotFree(JacsyzError):
    pass


class TheoremMismatch(JacsyzError):
    """Predicted and observed addition-deletion data disagree.

    Carries a ``dump`` dict with every graded dimension involved, so the
    failure can be inspected offline.
    """

    def __init__(self, message, dump):
        self.dump = dump
        super().__init__(message)


class BadParameters(JacsyzError):
    pass


class UnknownFamily(JacsyzError):
    pass
