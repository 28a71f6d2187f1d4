"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class TDAError(Exception):
    """Base class for all errors raised by tdats."""

    code = "tda_error"


class ParameterError(TDAError, ValueError):
    """An argument is outside its documented range."""

    code = "parameter_error"


class ValidationError(ParameterError):
    """An input object violates its structural invariants (e.g. asymmetric distances)."""

    code = "validation_error"


class DegenerateInputError(TDAError, ValueError):
    """The input is well-formed but carries no usable variation (constant series, zero norms)."""

    code = "degenerate_input"


class SelectionWarning(UserWarning):
    """A parameter-selection rule exhausted its scan range without a qualifying value."""


class InputError(TDAError):
    """An input file is missing or cannot be parsed."""

    code = "parse_error"


class MissingInputError(InputError, FileNotFoundError):
    code = "file_not_found"
