"""Exception hierarchy shared by all modules."""


class CoverDimError(Exception):
    pass


class CycleInRelation(CoverDimError):
    pass


class IndexOutOfRange(CoverDimError):
    pass


class EmptySet(CoverDimError):
    pass


class PairNotIncomparable(CoverDimError):
    pass


class Disconnected(CoverDimError):
    pass


class RootNotMinimal(CoverDimError):
    pass


class ChiTooSmall(CoverDimError):
    pass


class ImproperInputColoring(CoverDimError):
    pass


class BadParameters(CoverDimError):
    pass


class TooLarge(CoverDimError):
    pass


class NotKKFree(CoverDimError):
    pass


class InvariantViolation(CoverDimError):
    """A structural invariant broke; this always indicates a bug.

    ``clause`` names the violated invariant (e.g. ``"b.ii"``).
    """

    def __init__(self, clause, message=""):
        super().__init__(f"[{clause}] {message}" if message else clause)
        self.clause = clause


class GuaranteeFailure(CoverDimError):
    """A quantitative guarantee failed under best-effort thresholds.

    Unlike :class:`InvariantViolation` this is an expected outcome: small
    thresholds void the size bounds that large dimension would provide.
    The extraction drivers turn it into a structured failure record.
    """

    def __init__(self, guarantee, message="", **details):
        super().__init__(f"[{guarantee}] {message}" if message else guarantee)
        self.guarantee = guarantee
        self.details = details


class ChiBelowThreshold(GuaranteeFailure):
    def __init__(self, message="", **details):
        super().__init__("chi-below-threshold", message, **details)


class NoFreshMaximal(GuaranteeFailure):
    def __init__(self, message="", **details):
        super().__init__("no-fresh-maximal", message, **details)


class AssignmentExhausted(GuaranteeFailure):
    def __init__(self, message="", **details):
        super().__init__("assignment-exhausted", message, **details)
