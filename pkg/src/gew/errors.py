"""Exception types shared across the package."""

from __future__ import annotations


class GroupMismatchError(TypeError):
    """An element was handed to a group it does not belong to."""


class UnsupportedEnumerationError(ValueError):
    """Ball enumeration is impossible or infinite for this group/generating set."""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class UnwitnessedError(PreconditionError):
    """A constant that must lie in a verbal subgroup has no valid witness."""


class T2ViolationError(PreconditionError):
    """A pure equation carries a nontrivial central residue."""


class DihedralError(PreconditionError):
    """The free product is the infinite dihedral group Z2*Z2."""


class ParseError(ValueError):
    """Syntax error with a 1-based line/column position."""

    def __init__(self, message: str, line: int = 1, column: int = 1, text: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.text = text
        super().__init__(f"{message} (line {line}, column {column})")
