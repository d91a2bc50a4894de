"""Exception types shared across the package."""


class BipickError(Exception):
    """Base class for all package errors."""


class InputError(BipickError):
    """Malformed input data or violated input invariants."""


class PreconditionError(BipickError):
    """An operation was called outside its contract."""


class ConvergenceError(BipickError):
    """An iterative kernel exhausted its budget without converging."""


class UnsolvableError(BipickError):
    """The interpolation data admits no Schur-class solution."""


class ExtremalMinimalViolation(BipickError):
    """The extremal-minimal hypothesis of the one-variable classifier fails."""


class CommonFactorError(BipickError):
    """Two polynomials share a factor where coprimality is required."""


class DegenerateInputError(BipickError):
    """Input is structurally degenerate for the requested operation."""


class NumericalFailureError(BipickError):
    """An internal consistency check failed; results would be unreliable."""
