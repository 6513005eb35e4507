"""Exception hierarchy shared by the library and the command line."""


class SemiexactError(Exception):
    """Base class for every error raised by this package."""


class InputError(SemiexactError):
    """Malformed input: ragged tables, out-of-range indices, bad shapes."""


class DocumentSyntaxError(InputError):
    """A document is not well-formed JSON; carries the 1-based line and column."""

    def __init__(self, message, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class NameResolutionError(SemiexactError):
    """A document refers to a name that was never defined."""


class AxiomError(SemiexactError):
    """A table is well-formed but violates an algebraic axiom."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class MismatchError(SemiexactError):
    """Objects do not fit together (different semirings, non-composable maps)."""


class BudgetExceeded(SemiexactError):
    """An exhaustive search would exceed its configured budget."""


class ConsistencyError(SemiexactError):
    """An internal invariant failed; this signals a bug, never bad data."""


class HypothesisError(SemiexactError):
    """A construction was requested on data that violates its preconditions."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
