"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: input/parse problems exit 2,
violated mathematical preconditions exit 3, broken internal
invariants exit 4.
"""


class DrinfeldError(Exception):
    """Base class for all package errors."""


class ParseError(DrinfeldError, ValueError):
    """Malformed textual input; carries the offset of the failure."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class MathPreconditionError(DrinfeldError, ValueError):
    """A mathematically required precondition does not hold.

    Examples: bad reduction at a place, a kernel not contained in the
    requested torsion, the Lambert-W lemma hypothesis failing.
    """


class InternalInvariantError(DrinfeldError, RuntimeError):
    """An invariant the code itself guarantees was found violated."""
