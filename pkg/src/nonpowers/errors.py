"""Exception hierarchy shared by every module."""


class NonpowersError(Exception):
    """Base class for all errors raised by the package."""


class DegenerateInput(NonpowersError, ValueError):
    pass


class Unsupported(NonpowersError, ValueError):
    pass


class NotFinite(NonpowersError, ValueError):
    """A finite place was required but an archimedean one was given."""


class NotIntegral(NonpowersError, ValueError):
    pass


class WrongPlaceKind(NonpowersError, ValueError):
    pass


class UnsupportedWildSymbol(NonpowersError):
    """Cubic symbol at the place above 3 outside the certified-split case."""


class PreconditionViolated(NonpowersError, ValueError):
    pass


class Indeterminate(NonpowersError):
    """A computation could not be certified within its search budget."""


class NotFound(NonpowersError, LookupError):
    pass
