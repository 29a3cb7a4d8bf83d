"""Exception types shared across the package.

The CLI maps these onto stable exit codes, so the distinctions matter:
malformed input is not the same thing as a well-formed request that falls
outside an operation's domain, and neither is a request that would exceed
the partition-lattice size cap.
"""


class FinFreeError(Exception):
    """Base class for all errors raised by this package."""


class InputFormatError(FinFreeError):
    """Malformed external input: bad JSON, bad rational literal, bad shape."""


class NonMonicError(InputFormatError):
    """Coefficient input whose leading coefficient is not 1.

    Normalization is never silent; the caller has to divide through.
    """


class SizeCapError(FinFreeError):
    """A lattice operation was asked to exceed the configured cap n_max."""

    def __init__(self, n, n_max):
        self.n = n
        self.n_max = n_max
        super().__init__(
            "ground-set size %d exceeds the partition cap n_max = %d" % (n, n_max)
        )


class DimensionError(FinFreeError):
    """Operands live over different ground sets or degrees."""


class DomainError(FinFreeError):
    """Well-formed input outside an operation's mathematical domain."""


class RootConvergenceError(FinFreeError):
    """Numeric root extraction failed its residual tolerance."""

    def __init__(self, message, residuals):
        self.residuals = list(residuals)
        super().__init__("%s; residuals: %s" % (message, self.residuals))
