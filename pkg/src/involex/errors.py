"""Exception types shared across the package."""


class InvolexError(Exception):
    """Base class for all errors raised by involex."""


class ParseError(InvolexError, ValueError):
    """Malformed presentation text; carries a 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class CosetOverflow(InvolexError):
    """Live cosets exceeded the enumeration bound (group too large or infinite)."""

    def __init__(self, max_cosets: int):
        super().__init__(f"coset enumeration exceeded {max_cosets} live cosets")
        self.max_cosets = max_cosets


class NonRegularAction(InvolexError):
    """Generator permutations do not define a regular group action."""


class SizeLimitExceeded(InvolexError):
    """An operation was invoked beyond its supported size bound."""


class StructureError(InvolexError, ValueError):
    """A structural precondition failed (not abelian, not normal, not a 2-group, ...)."""


class CatalogError(InvolexError, ValueError):
    """Malformed catalog file or inconsistent catalog pair."""
