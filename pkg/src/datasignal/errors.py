"""Exception hierarchy.

Every error carries the process exit code the CLI maps it to:
2 usage, 3 data/parse, 4 numeric, 5 network/io.
"""


class DataSignalError(Exception):
    exit_code = 1


class UsageError(DataSignalError):
    exit_code = 2


class DataError(DataSignalError, ValueError):
    exit_code = 3


class NumericError(DataSignalError, ArithmeticError):
    exit_code = 4


class IoError(DataSignalError, OSError):
    exit_code = 5


# kernel core / classifier
class DimensionMismatch(DataError):
    pass


class SingularSystem(NumericError):
    pass


class IncompatibleSignals(DataError):
    pass


class SingleClass(DataError):
    pass


# 2D experiments
class InvalidRate(DataError):
    pass


class NotSPD(NumericError):
    pass


class WrongClassCount(DataError):
    pass


# MNIST
class IdxFormatError(DataError):
    pass


class BadMagic(IdxFormatError):
    pass


class TruncatedFile(IdxFormatError):
    pass


class ZeroImage(DataError):
    pass


class InsufficientClassMembers(DataError):
    pass


class LengthMismatch(DataError):
    pass


class NetworkError(IoError):
    pass


class ChecksumMismatch(IoError):
    pass


# CLI
class ParseError(DataError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
