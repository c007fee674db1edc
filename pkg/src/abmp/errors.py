"""Exception hierarchy shared by every abmp module."""


class ABMPError(Exception):
    """Base class for all errors raised by abmp."""


class InvalidInstance(ABMPError, ValueError):
    pass


class BadInstanceFile(InvalidInstance):
    pass


class InvalidScheme(ABMPError, ValueError):
    pass


class EmptyBundle(InvalidScheme):
    pass


class InvalidBundle(ABMPError, ValueError):
    pass


class AlreadyPresent(ABMPError, ValueError):
    pass


class BudgetExceeded(ABMPError, RuntimeError):
    pass


class NoZeroColumns(ABMPError, ValueError):
    pass


class NotUniform(ABMPError, ValueError):
    pass


class DomainError(ABMPError, ValueError):
    pass


class Infeasible(ABMPError, ValueError):
    pass


class BadParameters(ABMPError, ValueError):
    pass
