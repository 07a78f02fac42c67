"""Exception hierarchy shared by the library, the handlers and the CLI."""


class NcpError(Exception):
    """Base class for every error raised on purpose by ncp."""


class InputError(NcpError, ValueError):
    """Malformed or out-of-domain input."""


class DependentRadicandsError(InputError):
    pass


class InvalidClassError(InputError):
    pass


class IncompleteDataError(InputError):
    pass


class ExtensionError(InputError):
    pass


class WildPrimeError(NcpError):
    """The requested computation needs wild local theory (p = char K, or p | n off the 2-adic table)."""


class SearchExhaustedError(NcpError):
    """A bounded search ended before producing an object the caller cannot do without."""
