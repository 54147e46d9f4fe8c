"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class MVError(Exception):
    """Base class for all library errors."""


class MalformedInputError(MVError):
    """Tables, elements or literals that do not describe a valid object."""


class InvalidParameterError(MVError):
    pass


class ResourceLimitError(MVError):
    def __init__(self, what: str, bound: int, size: int):
        super().__init__(f"{what}: size {size} exceeds bound {bound}")
        self.bound = bound
        self.size = size


class TermSyntaxError(MVError):
    def __init__(self, message: str, column: int):
        super().__init__(f"{message} at column {column}")
        self.column = column


class UnknownIdentifierError(MVError):
    pass


class MissingBindingError(MVError):
    pass


class UnsupportedArityError(MVError):
    pass


class ConsistencyError(MVError):
    """Two independent procedures disagreed; always an implementation bug."""
