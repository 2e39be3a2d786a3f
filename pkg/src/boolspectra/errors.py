"""Exception hierarchy.

Construction failures that a caller can search over (violated construction
clauses, non-Boolean spectra) derive from :class:`ConstructionError` so the
CLI can map them to one exit code.
"""


class BoolSpectraError(ValueError):
    pass


class DimensionMismatch(BoolSpectraError):
    pass


class NotAFunctionSpectrum(BoolSpectraError):
    """Parseval's identity fails, so no Boolean function has this spectrum."""


class ConstructionError(BoolSpectraError):
    pass


class NotBooleanSpectrum(ConstructionError):
    """The inverse transform left the set {+1, -1} at point ``x``."""

    def __init__(self, x: int, raw_sum: int, n: int):
        self.x = x
        self.raw_sum = raw_sum
        self.n = n
        super().__init__(
            f"not a Boolean spectrum: at x={x} the inverse sum is {raw_sum}, "
            f"expected +-{1 << n}"
        )


class ConditionViolated(ConstructionError):
    """A named precondition clause of a construction does not hold."""

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        self.detail = detail
        msg = clause if not detail else f"{clause} ({detail})"
        super().__init__(msg)


class WeightPrecondition(ConditionViolated):
    pass


class NotBent(ConditionViolated):
    pass


class DualSumNotOne(ConditionViolated):
    pass


class SupportsOverlap(ConditionViolated):
    pass


class CaseConditionViolated(ConditionViolated):
    pass


class NotInjective(ConditionViolated):
    pass


class Infeasible(ConditionViolated):
    pass


class EmptySupport(BoolSpectraError):
    pass


class NotPlateaued(BoolSpectraError):
    pass


class NotFiveValued(BoolSpectraError):
    pass


class SupportNotPowerOfTwo(BoolSpectraError):
    pass


class OddM(BoolSpectraError):
    pass


class ShapeMismatch(BoolSpectraError):
    pass


class WrongSpectralShape(BoolSpectraError):
    pass


class TrichotomyViolated(AssertionError):
    """Internal invariant of the 4-decomposition; reaching it is a bug."""


class ParseError(BoolSpectraError):
    pass


class BadLength(ParseError):
    pass


class BadDigit(ParseError):
    pass


class BadRow(ParseError):
    pass


class ParsevalWarning(UserWarning):
    pass
