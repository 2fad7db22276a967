class GcError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(GcError):
    pass


class SingularMatrix(GcError):
    pass


class NotVirasoro(GcError):
    pass


class NotIdempotent(GcError):
    pass


class ConstraintViolated(GcError):
    pass


class CutoffExceeded(GcError):
    pass


class NotRegular(GcError):
    pass


class InconsistentData(GcError):
    pass


class PartitionViolation(GcError):
    pass


class ClaimFailed(GcError):
    """A structural claim did not hold on the input tables.

    ``witness`` carries enough detail (block, degree, matrix unit, entry) to
    locate the offending action entry.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness or {}


class NotRepresentation(GcError):
    pass


class InputError(GcError):
    """Malformed JSON input; the message names the file/path and expected type."""
