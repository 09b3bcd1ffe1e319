"""Exception hierarchy.  The CLI maps these onto exit codes."""


class AlmostNovError(Exception):
    pass


class PreconditionError(AlmostNovError, ValueError):
    """An operation was called outside its domain (exit code 2)."""


class IncompatibleScalars(PreconditionError):
    def __init__(self, msg="incompatible scalars"):
        super().__init__(msg)


class PrecisionError(AlmostNovError, ArithmeticError):
    """The answer is not determined at the working precision (exit code 3)."""


class ParseError(AlmostNovError, ValueError):
    """Malformed input text (exit code 1)."""

    def __init__(self, msg, line=1, column=1):
        super().__init__("line %d, column %d: %s" % (line, column, msg))
        self.line = line
        self.column = column
