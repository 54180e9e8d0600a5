"""Exception hierarchy shared by the package."""


class PaperfoldError(Exception):
    """Base class for every error raised by paperfold."""


class AlphabetMismatch(PaperfoldError, ValueError):
    """A grid was handed to an operation expecting the other alphabet."""


class DepthCapExceeded(PaperfoldError):
    """A supertile level beyond the configured depth cap was requested."""


class BudgetExceeded(PaperfoldError):
    """An enumeration would exceed the configured window budget."""


class PlateauNotFound(PaperfoldError):
    """Pattern sets did not stabilise before the depth cap was reached."""

    def __init__(self, rows, cols, last_level, sizes):
        self.rows = rows
        self.cols = cols
        self.last_level = last_level
        self.sizes = sizes
        super().__init__(
            f"no plateau for {rows}x{cols} patterns up to level {last_level}; "
            f"set sizes per level: {sizes}"
        )
