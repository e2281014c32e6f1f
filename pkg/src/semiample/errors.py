"""Exception types raised across the package.

Every error carries enough structured data to reproduce the failure; the
command-line front end maps them to exit codes.
"""


class SemiampleError(Exception):
    """Base class for all package errors."""


class SymmetryViolation(SemiampleError, ValueError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"f({index}) != f(-{index})")


class UnsupportedModulus(SemiampleError, ValueError):
    pass


class ResourceLimit(SemiampleError, RuntimeError):
    pass


class BudgetExceeded(ResourceLimit):
    def __init__(self, budget, message=None):
        self.budget = budget
        super().__init__(message or f"enumeration budget of {budget} exhausted")


class SumNotZero(SemiampleError, ValueError):
    pass


class DivisionByZero(SemiampleError, ZeroDivisionError):
    pass


class NotBinary(SemiampleError, ValueError):
    pass


class NotSymmetric(SemiampleError, ValueError):
    pass


class NonzeroAtZero(SemiampleError, ValueError):
    pass


class NotPointed(SemiampleError, ValueError):
    pass


class ConditionDaggerFails(SemiampleError):
    """The zero-sum minimum of the quadratic form is below m(f)."""

    def __init__(self, vector, value, bound):
        self.vector = vector
        self.value = value
        self.bound = bound
        super().__init__(
            f"Q_f({list(vector) if vector is not None else '?'}) = {value} < m(f) = {bound} "
            "on the zero-sum lattice")


class Inconclusive(SemiampleError):
    """A tri-state check could not reach a rigorous verdict."""

    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)
