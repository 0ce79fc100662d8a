"""Exception types shared across the toolkit.

Numeric precondition failures map to CLI exit status 3, everything else that
is a plain ``ValueError`` is treated as a configuration problem.
"""


class PreconditionError(ValueError):
    """A numeric precondition of an operation does not hold."""


class YoungConditionError(PreconditionError):
    """Hölder exponents with ``alpha + beta <= 1``; the Young integral is undefined."""

    def __init__(self, alpha, beta):
        super().__init__(
            f"Young condition violated: alpha + beta = {alpha + beta:.6g} <= 1"
        )
        self.alpha = alpha
        self.beta = beta


class OnCurveError(PreconditionError):
    """The query point lies inside the guard band of the curve."""


class InternalFault(RuntimeError):
    """A provably well-posed linear solve returned a large residual."""
