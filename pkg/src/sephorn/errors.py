"""Exception hierarchy for sephorn.

Every error raised by the library derives from :class:`SepHornError`, so
callers (including the CLI) can distinguish library failures from plain
Python errors.
"""


class SepHornError(Exception):
    """Base class for all sephorn errors."""


# --- linear algebra ---------------------------------------------------------

class NotHermitian(SepHornError):
    """Input matrix deviates from Hermiticity beyond tolerance."""


class NoConvergence(SepHornError):
    """An iterative linear-algebra kernel exhausted its budget."""


class NotOrthonormal(SepHornError):
    """Prescribed rows are not mutually orthonormal."""


class DimensionMismatch(SepHornError):
    """Array shapes are inconsistent with the declared dimensions."""


class DimensionTooSmall(SepHornError):
    """Generator bases require dimension >= 2."""


# --- states -----------------------------------------------------------------

class NotAState(SepHornError):
    """Matrix is not Hermitian / trace-one within tolerance."""


class NotPSD(SepHornError):
    """Constructed matrix has a negative eigenvalue beyond tolerance."""


class NotFullRank(SepHornError):
    """Operation requires full local ranks."""


class NotNormalForm(SepHornError):
    """Operation requires vanishing marginal Bloch vectors."""


class OutOfPositivityRange(SepHornError):
    """State-family parameter lies outside the physical range."""


# --- combinatorics ----------------------------------------------------------

class BadCardinality(SepHornError):
    """Triple-set cardinality must satisfy 1 <= r < n."""


class TripleCapExceeded(SepHornError):
    """Triple enumeration is capped at n <= 16."""


class LengthMismatch(SepHornError):
    """Singular-value sequences must share a common length."""


class NotSorted(SepHornError):
    """Singular-value sequences must be non-negative and descending."""


# --- constructions ----------------------------------------------------------

class FactorConstraintViolated(SepHornError):
    """The diagonal factorization constraint linking the singular values of
    the two factors to those of the target does not hold."""


class BoundExceeded(SepHornError):
    """Correlation strength exceeds the constructive sufficient bound."""


class FixedPointDiverged(SepHornError):
    """Probability fixed-point iteration exhausted its budget."""


class SearchFailed(SepHornError):
    """Numerical simplex search did not reach the target residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


# --- file formats -----------------------------------------------------------

class FileFormatError(SepHornError):
    """State or decomposition file could not be parsed."""
