"""Exception types shared across the toolkit.

HonestNonResult subclasses signal gates that fired or searches that gave up
without producing a claim; the command line maps them to exit code 2.
"""


class PierceError(Exception):
    pass


class CollinearInput(PierceError):
    pass


class EmptyInput(PierceError):
    pass


class HonestNonResult(PierceError):
    """A non-result that is not a failure: a gate fired or a budget ran out."""


class NotNearDisk(HonestNonResult):
    pass


class NotConstantWidth(HonestNonResult):
    pass


class NoUnionDirection(HonestNonResult):
    pass


class HypothesisViolation(PierceError):
    """The cross-family intersection hypothesis fails; carries witnesses.

    direction: the Direction where the contradiction shows, or None.
    witnesses: ((family_a, idx_a), (family_b, idx_b), ...) set identifiers.
    """

    def __init__(self, message, direction=None, witnesses=()):
        super().__init__(message)
        self.direction = direction
        self.witnesses = tuple(witnesses)


class EmptyRegion(PierceError):
    pass


class CoverSearchFailed(HonestNonResult):
    pass


class RotationUncoverable(PierceError):
    def __init__(self, message, angle=None):
        super().__init__(message)
        self.angle = angle


class RadiusTooSmall(PierceError):
    pass


class BudgetExceeded(PierceError):
    pass


class GenerationFailed(PierceError):
    pass


class UnknownFixture(PierceError):
    pass


class ParseError(PierceError):
    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class ValidationError(PierceError):
    pass
