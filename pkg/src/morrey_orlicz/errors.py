"""Exception types raised by the library."""


class MorreyOrliczError(Exception):
    """Base class for all library errors."""


class ConstraintError(MorreyOrliczError, ValueError):
    """A parameter set violates a stated admissibility constraint.

    The ``constraint`` attribute names the violated rule.
    """

    def __init__(self, constraint, detail=""):
        self.constraint = constraint
        self.detail = detail
        msg = f"constraint violated: {constraint}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class GrammarError(MorreyOrliczError, ValueError):
    """A textual function specification could not be parsed."""


class ExtrapolationError(MorreyOrliczError, ValueError):
    """A tabulated function was queried outside of its table."""


class UnresolvedSupremumError(MorreyOrliczError, ArithmeticError):
    """The supremum defining a conjugate is not bracketed by the search range."""


class DivergenceError(MorreyOrliczError, ArithmeticError):
    """An integral was detected to diverge."""
