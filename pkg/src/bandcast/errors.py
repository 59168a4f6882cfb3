"""Exception hierarchy shared by all bandcast modules."""


class BandcastError(Exception):
    """Base class for all bandcast errors."""


class ContractError(BandcastError, ValueError):
    """An argument violates a documented precondition (bad shape, bad flag value)."""


class DataError(BandcastError):
    """Input data is malformed or unusable (bad CSV row, non-finite sample)."""


class CoverageError(DataError):
    """A signal was evaluated or integrated outside its sampled time range."""


class NumericalError(BandcastError):
    """A numerical procedure failed (factorization breakdown, no fallback)."""


class ConvergenceError(NumericalError):
    """Adaptive quadrature could not reach the requested tolerance.

    Carries the best available estimate in ``best`` (a QuadResult) so callers
    can inspect how far the integration got before giving up.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
