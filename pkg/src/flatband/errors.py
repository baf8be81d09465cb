"""Exception hierarchy shared by the library and the CLI."""


class FlatBandError(Exception):
    pass


class GraphFormatError(FlatBandError, ValueError):
    """Malformed or invalid graph description."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.message = message


class EngineError(FlatBandError, RuntimeError):
    """An algebraic computation failed an internal consistency check."""


class ZeroKernelError(EngineError):
    pass


class DensityMismatchError(EngineError):
    pass


class ResolutionError(EngineError):
    pass


class Cancelled(FlatBandError):
    """Raised from a cooperative cancellation check between pivot steps."""
