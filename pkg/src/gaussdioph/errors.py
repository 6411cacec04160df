"""Exception hierarchy.

Every error carries a stable ``code`` string which the CLI reports verbatim.
"""

from __future__ import annotations


class GaussDiophError(Exception):
    code = "Error"


class ZeroInput(GaussDiophError, ValueError):
    code = "ZeroInput"


class BadModulus(GaussDiophError, ValueError):
    code = "BadModulus"


class BadParams(GaussDiophError, ValueError):
    code = "BadParams"


class NotFound(GaussDiophError, LookupError):
    code = "NotFound"


class InexactDivision(GaussDiophError, ArithmeticError):
    code = "InexactDivision"


class InternalInconsistency(GaussDiophError, AssertionError):
    code = "InternalInconsistency"


class VIsZero(GaussDiophError, ValueError):
    code = "VIsZero"


class NotSatisfied(GaussDiophError, ValueError):
    code = "NotSatisfied"


class PolySyntaxError(GaussDiophError, ValueError):
    """Malformed polynomial text. ``line`` and ``column`` are 1-based."""

    code = "SyntaxError"

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class ReservedName(GaussDiophError, ValueError):
    code = "ReservedName"


class UnboundVariable(GaussDiophError, KeyError):
    code = "UnboundVariable"

    def __init__(self, name: str) -> None:
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unbound variable {self.name!r}"


class TooLarge(GaussDiophError, OverflowError):
    code = "TooLarge"

    def __init__(self, limit: int) -> None:
        super().__init__(f"expansion exceeded the term limit of {limit}")
        self.limit = limit


class BadVariables(GaussDiophError, ValueError):
    code = "BadVariables"

    def __init__(self, names: list[str]) -> None:
        super().__init__("variables outside z0..z10: " + ", ".join(names))
        self.names = names


class PreconditionFailed(GaussDiophError, ValueError):
    code = "PreconditionFailed"


class SuiteFailed(GaussDiophError):
    code = "SuiteFailed"

    def __init__(self, message: str, counterexample: object = None) -> None:
        super().__init__(message)
        self.counterexample = counterexample


class UsageError(GaussDiophError):
    code = "UsageError"
