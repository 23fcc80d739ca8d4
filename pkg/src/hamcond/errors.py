"""Exception hierarchy shared by all modules.

Each class carries the CLI exit code it maps to.
"""


class HamcondError(Exception):
    exit_code = 5


class InvalidDimension(HamcondError, ValueError):
    exit_code = 2


class StructureMismatch(HamcondError, ValueError):
    exit_code = 2


class ZeroProjection(HamcondError, ArithmeticError):
    exit_code = 4


class DecompositionFailed(HamcondError, ArithmeticError):
    exit_code = 5


class MatchingFailed(HamcondError, ArithmeticError):
    exit_code = 5


class NotSimple(HamcondError, ArithmeticError):
    exit_code = 3

    def __init__(self, message, gap=None):
        super().__init__(message)
        self.gap = gap


class DefectiveEigenvalue(HamcondError, ArithmeticError):
    exit_code = 5


class NotNormalized(HamcondError, ValueError):
    exit_code = 5
