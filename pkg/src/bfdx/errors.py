"""Exception hierarchy shared by all bfdx modules."""


class BfdxError(Exception):
    """Base class for every error raised by bfdx."""


class DomainError(BfdxError, ValueError):
    """An argument lies outside the domain of the function."""


class InfeasibleError(BfdxError, ValueError):
    """The requested target cannot be attained for these inputs."""


class BracketError(BfdxError, ValueError):
    """A root-finding bracket does not straddle a sign change."""


class ConvergenceError(BfdxError, ArithmeticError):
    """An iterative routine exhausted its iteration budget."""
