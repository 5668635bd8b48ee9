"""Exception hierarchy shared by all modules."""


class CoronaError(Exception):
    """Base class for every error raised by coronab."""


class DomainError(CoronaError, ValueError):
    """Evaluation requested outside the closed unit disk, or a non-finite input."""


class IllConditioned(CoronaError):
    """A degree decision in Euclid fell inside the ambiguity band."""


class CertificationFailure(CoronaError):
    """A polynomial could not be certified nonvanishing on the closed disk."""

    def __init__(self, reason: str, *, margin: float = 0.0, winding: int | None = None):
        super().__init__(reason)
        self.reason = reason
        self.margin = margin
        self.winding = winding


class NodeCollision(CoronaError, ValueError):
    """Two Blaschke zeros are closer than the node-separation tolerance."""


class SingularSystem(CoronaError):
    pass


class NotAMember(CoronaError):
    """A function violates the algebra constraints (equal values, vanishing jets)."""


class NotOrthogonal(CoronaError):
    pass


class NearZeroPivot(CoronaError):
    pass


class DimensionMismatch(CoronaError, ValueError):
    pass


class NoSolution(CoronaError):
    """The data have a common zero in the closed disk; no Bezout solution exists."""


class OrthogonalityViolated(CoronaError):
    pass


class AllConstantsZero(CoronaError):
    pass


class SearchExhausted(CoronaError):
    """The bounded reduction search found no certified candidate.

    This is not a disproof: a reducing element exists, the search is incomplete.
    """

    def __init__(self, best_margin: float):
        super().__init__(f"search exhausted (best margin {best_margin:.3g})")
        self.best_margin = best_margin


class Rejection(CoronaError):
    def __init__(self, which: str, detail: str = ""):
        super().__init__(f"{which}: {detail}" if detail else which)
        self.which = which
        self.detail = detail
