"""Exception types shared by the workbench."""


class QwbError(Exception):
    pass


class ShapeError(QwbError, ValueError):
    """Dimension mismatch between relations or categories."""


class QuantaleMismatch(QwbError, ValueError):
    pass


class CapExceeded(QwbError):
    """An enumeration would exceed its candidate cap."""


class InvariantViolation(QwbError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(QwbError, ValueError):
    def __init__(self, message, line=0, column=0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
