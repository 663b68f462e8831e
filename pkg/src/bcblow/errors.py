"""Exception hierarchy shared by every module."""


class BCBlowError(Exception):
    pass


class RelationNotHomogeneous(BCBlowError):
    pass


class UnknownGenerator(BCBlowError):
    pass


class RingMismatch(BCBlowError):
    pass


class BasisIncomplete(BCBlowError):
    pass


class DegreeMismatch(BCBlowError):
    pass


class NotUnital(BCBlowError):
    pass


class NotSymmetric(BCBlowError):
    pass


class RankMismatch(BCBlowError):
    pass


class DivisibilityViolation(BCBlowError):
    """Raised when a quotient that must be exact leaves a remainder (a bug trap)."""


class IntegralityViolation(BCBlowError):
    pass


class FormulaViolation(BCBlowError):
    pass


class ValidationError(BCBlowError):
    pass


class NotIntegrable(BCBlowError):
    pass


class NotAClass(BCBlowError):
    pass


class ParseError(BCBlowError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class InconsistencyReport(BCBlowError):
    """Carries a failed cross-check report so callers cannot silently drop it."""

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report
