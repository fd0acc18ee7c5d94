"""Exception types shared across the package."""


class SchmidtError(Exception):
    """Base class for all library errors."""


class NonFundamentalError(SchmidtError, ValueError):
    """The integer is not a negative fundamental discriminant."""


class MixedDiscriminantError(SchmidtError, ValueError):
    """Binary operation on values from different fields."""


class BothZeroError(SchmidtError, ValueError):
    """Coprimality is undefined for the pair (0, 0)."""


class NotEuclideanFieldError(SchmidtError, ValueError):
    """Operation requires one of the five norm-Euclidean fields."""


class NotPrimeError(SchmidtError, ValueError):
    """Kronecker symbol requested at a non-prime."""


class NonUnitDeterminantError(SchmidtError, ValueError):
    """Matrix determinant is not a unit of the ring."""


class NotCoprimeError(SchmidtError, ValueError):
    """No unimodular completion exists for the given pair."""


class NotTangentError(SchmidtError, ValueError):
    """Tangency point requested for a non-tangent pair of circles."""


class NotReducedError(SchmidtError, ValueError):
    """Projective point is not in coprime (reduced) form."""


class NotAUnitError(SchmidtError, ValueError):
    """Element is not a unit of the ring."""


class InvalidCircleError(SchmidtError, ValueError):
    """Triple violates the curvature/co-curvature/centre relation."""


class RankDeficientError(SchmidtError, ValueError):
    """Generators do not span a rank-2 lattice."""


class NotPrimevalError(SchmidtError, ValueError):
    """Lattice conductor differs from its covolume."""


class SearchExhaustedError(SchmidtError, RuntimeError):
    """A bounded search that is guaranteed to succeed ran out of box.

    Raised only on implementation bugs, never on valid inputs.
    """


class NotInvertibleResidueError(SchmidtError, ValueError):
    """Residue is not invertible modulo the conductor."""


class NonIntegerResultError(SchmidtError, RuntimeError):
    """A quantity that must be an integer evaluated to a fraction."""


class NoGhostCircleError(SchmidtError, ValueError):
    """The field has no ghost circle (discriminant > -15)."""


class CertificateFailureError(SchmidtError, RuntimeError):
    """Separation certificate invariant is zero or has wrong parity.

    Signals a non-Bianchi input triple or an implementation bug.
    """
