"""Exception types shared across the package."""


class ParseError(ValueError):
    """Raised when polynomial text does not conform to the grammar.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class FormatError(ValueError):
    """Raised when a serialized ALS, matrix, or factor file is malformed."""
