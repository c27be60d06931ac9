"""Exception hierarchy shared by all modules.

Every failure mode that callers are expected to handle has its own class;
anything else is a plain ValueError/AssertionError and indicates a bug.
"""


class QuarticTorsionError(Exception):
    """Base class for all library errors."""


class NonCoprimeModuli(QuarticTorsionError):
    pass


class DegreeCapExceeded(QuarticTorsionError):
    """Minimal-polynomial reconstruction ran past the configured degree cap."""


class BudgetExceeded(QuarticTorsionError):
    """A point count was requested beyond the configured field-size budget."""


class MaxIterations(QuarticTorsionError):
    """A randomized group computation did not stabilise within its cap."""


class AnnihilatorInvalid(QuarticTorsionError):
    """element_order was called with an integer that does not kill the element."""


class InconsistentCounts(QuarticTorsionError):
    """Point counts do not fit any genus-3 Frobenius polynomial."""


class DegenerateConfiguration(QuarticTorsionError):
    """A divisor-space computation hit an unexpected dimension."""


class BadReduction(QuarticTorsionError):
    pass


class NonIntegralSupport(QuarticTorsionError):
    """Divisor data has a denominator divisible by the reduction prime."""


class SupportAtInfinity(QuarticTorsionError):
    """Requested affine coordinates for a divisor meeting the chart's line at infinity."""


class RamifiedOrNonmaximal(QuarticTorsionError):
    """Prime divides the polynomial discriminant; splitting data is not certified."""


class DenominatorAtP(QuarticTorsionError):
    pass


class GroupTooLarge(QuarticTorsionError):
    pass


class CombinatorialBlowup(QuarticTorsionError):
    """The product of division-set quotients exceeded the tuple cap."""


class NoRationalPoint(QuarticTorsionError):
    pass


class InsufficientPrimes(QuarticTorsionError):
    pass
