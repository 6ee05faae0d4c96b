"""Exception types shared across the package."""


class GaleLemkeError(Exception):
    """Base class for all package-specific errors."""


class GameFormatError(GaleLemkeError):
    """Malformed game or profile text; carries a 1-based line/column position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class DegenerateGameError(GaleLemkeError):
    """Raised when an operation that requires nondegeneracy hits a tie."""


class CyclingError(GaleLemkeError):
    """A pivoting run revisited a basis; possible only with the
    lexicographic rule disabled on a degenerate game."""


class UnboundedPolytopeError(GaleLemkeError):
    """A pivot step found an unbounded edge; the input system is not a
    polytope (the game was not normalized)."""


class StepCapExceededError(GaleLemkeError):
    """A pivoting run hit its step cap before terminating."""

    def __init__(self, message: str, steps_taken: int):
        self.steps_taken = steps_taken
        super().__init__(message)


class BudgetExceededError(GaleLemkeError):
    """An enumeration was refused because it exceeds the configured budget."""


class NoEquilibriumError(GaleLemkeError):
    """A search exhausted its universe without finding an equilibrium."""
