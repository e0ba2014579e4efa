"""Exception types raised by vodbg."""


class VodbgError(Exception):
    """Base class for all library errors."""


class AlphabetError(VodbgError, ValueError):
    pass


class NotFoundError(VodbgError, LookupError):
    pass


class InputError(VodbgError, ValueError):
    """A read or k-mer contains a symbol outside the alphabet, or input is empty."""


class ConstructionError(VodbgError, ValueError):
    pass


class HandleError(VodbgError, ValueError):
    """A node handle does not describe a node of the requested graph."""


class OrderError(VodbgError, ValueError):
    pass


class FormatError(VodbgError, ValueError):
    pass


class CorruptionError(FormatError):
    pass


class VersionError(FormatError):
    pass
