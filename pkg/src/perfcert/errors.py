"""Exception hierarchy shared by all modules."""


class PerfcertError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(PerfcertError, ValueError):
    def __init__(self, player, expected, got, what="vector"):
        self.player = player
        self.expected = expected
        self.got = got
        super().__init__(
            f"player {player}: {what} has {got} entries, expected {expected}")


class NotFullSupport(PerfcertError, ValueError):
    def __init__(self, player, strategy):
        self.player = player
        self.strategy = strategy
        super().__init__(
            f"player {player}: strategy {strategy} never receives positive mass")


class LevelOutOfRange(PerfcertError, ValueError):
    pass


class SinglePlayer(PerfcertError, ValueError):
    pass


class ZeroCoordinate(PerfcertError, ValueError):
    def __init__(self, player, strategy):
        self.player = player
        self.strategy = strategy
        super().__init__(
            f"coordinate ({player}, {strategy}) is the zero polynomial")


class ModeMismatch(PerfcertError, ValueError):
    pass


class OrderMismatch(PerfcertError, ValueError):
    pass


class DegreeTooSmall(PerfcertError, ValueError):
    pass


class WrongPlayerCount(PerfcertError, ValueError):
    pass


class BudgetExceeded(PerfcertError, RuntimeError):
    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"enumeration size {size} exceeds cap {cap}")


class InvalidInput(PerfcertError, ValueError):
    pass


class NotConverted(PerfcertError):
    """A polynomial certificate could not be turned into an LPS certificate.

    ``stage`` names the last construction step that was tried.
    """

    def __init__(self, stage, reason):
        self.stage = stage
        self.reason = reason
        super().__init__(f"{stage}: {reason}")


class ParseError(PerfcertError, ValueError):
    def __init__(self, path, line, field, message):
        self.path = path
        self.line = line
        self.field = field
        loc = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{loc}: field '{field}': {message}")
