"""Exception types shared across the package.

Every domain error derives from :class:`PCError` and carries a stable
``code`` string so callers (CLI exit mapping, HTTP error bodies) can act on
the failure kind without parsing messages. Overflow of the elementwise
exponential is reported with the builtin :class:`OverflowError`.
"""


class PCError(ValueError):
    """Base class for validation and domain errors."""

    code = "invalid"


class NotSquareError(PCError):
    code = "not_square"


class DimensionTooSmallError(PCError):
    code = "dimension_too_small"


class DimensionMismatchError(PCError):
    code = "dimension_mismatch"


class WrongDimensionError(PCError):
    """Operation defined only for one dimension (the 3x3 decomposition)."""

    code = "wrong_dimension"


class NonPositiveEntryError(PCError):
    code = "non_positive_entry"


class EntryRangeError(PCError):
    """Entry magnitude outside the representable guard range."""

    code = "entry_out_of_range"


class BadDiagonalError(PCError):
    code = "bad_diagonal"


class ReciprocityViolationError(PCError):
    code = "reciprocity_violation"


class NotSkewError(PCError):
    code = "not_skew"


class MembershipViolationError(PCError):
    code = "membership_violation"


class LabelMismatchError(PCError):
    code = "label_mismatch"


class DimensionError(PCError):
    """Document-level shape problem (non-square matrix, label/shape mismatch)."""

    code = "dimension_error"


class ParseError(PCError):
    """Malformed input text; ``line`` and ``column`` are 1-based when known."""

    code = "parse_error"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        location = ""
        if line is not None:
            location = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + location)
        self.line = line
        self.column = column
