from __future__ import annotations

from typing import Optional


class WorkbenchError(Exception):
    """Base class for every domain error raised by the workbench."""


class ElementIndexError(WorkbenchError, IndexError):
    pass


class NotBci(WorkbenchError, ValueError):
    pass


class NotAutomorphism(WorkbenchError, ValueError):
    pass


class NotAutomorphismGroup(WorkbenchError, ValueError):
    pass


class NotBooleanGroup(WorkbenchError, ValueError):
    pass


class UnsupportedIndex(WorkbenchError, ValueError):
    pass


class FenyvesIndexError(WorkbenchError, ValueError):
    pass


class OrderTooLarge(WorkbenchError, ValueError):
    pass


class InternalInconsistency(WorkbenchError, RuntimeError):
    """Two independent computations disagreed. Always a bug."""


class TableParseError(WorkbenchError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> None:
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"
