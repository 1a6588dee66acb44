"""Exception hierarchy shared by all modules."""


class FuscatError(Exception):
    """Base class for every error raised by fuscat."""


class StructureError(FuscatError, ValueError):
    """Input data is malformed (index out of range, wrong shape, bad permutation)."""


class PreconditionError(FuscatError, ValueError):
    """An operation was called on inputs outside its documented domain."""


class NumericalError(FuscatError, ArithmeticError):
    """A floating point routine failed to produce a trustworthy value."""


class ConvergenceError(NumericalError):
    """Power iteration did not converge within its iteration budget."""


class IntegrityError(NumericalError):
    """A float quantity that must be an integer was not close enough to one."""


class ConsistencyError(FuscatError, RuntimeError):
    """Two independent routes to the same fact disagree."""


class SizeError(FuscatError, ValueError):
    """Problem size exceeds a configured cap."""
