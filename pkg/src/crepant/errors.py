"""Exception hierarchy shared by every module of the package."""


class CrepantError(Exception):
    """Base class; the CLI maps any subclass to exit status 1."""


class DivisionByZero(CrepantError, ZeroDivisionError):
    pass


class PoleAtSpecialization(CrepantError):
    pass


class RingMismatch(CrepantError):
    pass


class NonzeroConstantTerm(CrepantError):
    pass


class DimensionMismatch(CrepantError):
    pass


class NoRationalForm(CrepantError):
    pass


class SingularSystem(CrepantError):
    def __init__(self, message, rank_defect=None):
        super().__init__(message)
        self.rank_defect = rank_defect


class PoleAtContinuationPoint(CrepantError):
    pass


class SizeLimit(CrepantError):
    pass


class ZeroWeight(CrepantError):
    pass


class ContinuationFailure(CrepantError):
    pass


class MismatchAt(CrepantError):
    def __init__(self, degree, lhs=None, rhs=None):
        super().__init__(f"mismatch at degree {degree}: {lhs} != {rhs}")
        self.degree = degree
        self.lhs = lhs
        self.rhs = rhs


class NotAGroup(CrepantError):
    pass


class DegenerateEigenspaces(CrepantError):
    pass


class AgeNotOne(CrepantError):
    def __init__(self, cls, age):
        super().__init__(f"class {cls} has age {age}, expected 1")
        self.cls = cls
        self.age = age


class GradingViolation(CrepantError):
    def __init__(self, row, cls):
        super().__init__(f"row {row} couples to class {cls} of the wrong age")
        self.row = row
        self.cls = cls
