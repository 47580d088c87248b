"""Exception hierarchy shared by every module."""


class ProjarrError(Exception):
    """Base class for all errors raised by this package."""


class ZeroTriple(ProjarrError, ValueError):
    """A homogeneous triple with every entry zero."""


class IdenticalLines(ProjarrError, ValueError):
    pass


class SingularMatrix(ProjarrError, ValueError):
    pass


class DuplicateLines(ProjarrError, ValueError):
    pass


class ParseError(ProjarrError, ValueError):
    pass


class ExhaustedRetries(ProjarrError, RuntimeError):
    pass


class IdentityViolation(ProjarrError, AssertionError):
    """An exact algebraic identity failed; always an internal bug."""


class Infeasible(ProjarrError, ValueError):
    """A certificate violates the constraint at multiplicity ``k``."""

    def __init__(self, k, slack):
        self.k = k
        self.slack = slack
        super().__init__(f"constraint k={k} violated (slack {slack})")


class EmptyFeasibleRegion(ProjarrError, ValueError):
    pass


class UnboundedObjective(ProjarrError, ValueError):
    pass


class ApplicabilityViolation(ProjarrError, ValueError):
    pass


class GuardViolation(ProjarrError, ValueError):
    pass


class BoundViolation(ProjarrError, AssertionError):
    """A measured region count fell below a proven lower bound."""

    def __init__(self, name, value, f):
        self.name = name
        self.value = value
        self.f = f
        super().__init__(f"bound {name}={value} exceeds measured f={f}")
