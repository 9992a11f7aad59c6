"""Exception hierarchy shared by every ladderkit module."""


class LadderkitError(Exception):
    """Base class for all ladderkit errors."""


class PoleError(LadderkitError, ValueError):
    """An argument sits on a pole (gamma function, series denominator)."""


class DomainError(LadderkitError, ValueError):
    """An argument lies outside the supported domain."""


class ConvergenceError(LadderkitError, ArithmeticError):
    """A series did not meet its tolerance within the term cap."""


class DegenerateStepError(LadderkitError, ArithmeticError):
    """A ladder map needs 1/gamma but gamma is zero."""


class FamilyMismatchError(LadderkitError, ValueError):
    """Objects from different equation families (or steps) were combined."""


class ChainMismatchError(LadderkitError, ValueError):
    """Consecutive steps do not share the intermediate knot."""


class NotInvertibleError(LadderkitError, ArithmeticError):
    """A rational function is not a unit of the Laurent ring."""


class SingularEliminationError(LadderkitError, ArithmeticError):
    """Eliminating the intermediate coordinate is impossible.

    When the quadratic coefficient of the intermediate coordinate vanishes
    identically, stationarity collapses to an algebraic relation
    ``source_coeff * q + target_coeff * Q = 0`` which is kept on the exception.
    """

    def __init__(self, message, source_coeff=None, target_coeff=None):
        super().__init__(message)
        self.source_coeff = source_coeff
        self.target_coeff = target_coeff
