"""Exception and warning types shared across the library."""


class ShiftError(Exception):
    """Base class for all domain errors raised by this package."""


class ForeignSymbol(ShiftError):
    """A symbol does not belong to the declared alphabet."""

    def __init__(self, symbol, alphabet=None):
        self.symbol = symbol
        self.alphabet = alphabet
        super().__init__(f"symbol {symbol!r} is not in the alphabet")


class Incompatible(ShiftError):
    """Two patterns disagree at a shared coordinate."""

    def __init__(self, coordinate):
        self.coordinate = coordinate
        super().__init__(f"patterns disagree at coordinate {coordinate}")


class EmptyShift(ShiftError):
    """The (truncated) shift space contains no point."""


class WindowTooShort(ShiftError):
    """An input word is shorter than the window an operation needs."""

    def __init__(self, needed, got):
        self.needed = needed
        self.got = got
        super().__init__(f"need a word of length >= {needed}, got {got}")


class NotAdmissible(ShiftError):
    """A word violates the local constraints of its shift space."""


class RuleGap(ShiftError):
    """A local rule has no entry for a window or label."""

    def __init__(self, window):
        self.window = window
        super().__init__(f"local rule is undefined on {window!r}")


class InsufficientWindow(ShiftError):
    """A probe needs a coordinate the supplied window does not cover."""

    def __init__(self, coordinate):
        self.coordinate = coordinate
        super().__init__(f"window does not cover coordinate {coordinate}")


class NotMarkov(ShiftError):
    """An operation requires a 1-step shift specification."""

    def __init__(self, step):
        self.step = step
        super().__init__(f"expected a 1-step (Markov) shift, got step {step}")


class OverlapMismatch(ShiftError):
    """Consecutive blocks do not overlap consistently."""

    def __init__(self, position):
        self.position = position
        super().__init__(f"blocks at positions {position} and {position + 1} do not overlap")


class NotNested(ShiftError):
    """A chain of cylinders is not a refining chain."""


class InteriorAddition(ShiftError):
    """A cylinder fixes a coordinate strictly inside the current hull."""

    def __init__(self, coordinate):
        self.coordinate = coordinate
        super().__init__(f"coordinate {coordinate} lies strictly inside the hull fixed so far")


class NoPeriodicSolution(ShiftError):
    """No eventually periodic point satisfies a periodic constraint family."""


class ResourceBound(ShiftError):
    """An enumeration would exceed the configured cap."""

    def __init__(self, requested, cap):
        self.requested = requested
        self.cap = cap
        super().__init__(f"enumeration of {requested} items exceeds cap {cap}")


class InfiniteAlphabetUnsupported(ShiftError):
    """An operation is only defined for explicit finite alphabets."""


class ParseError(ShiftError):
    """A specification document is not syntactically valid."""

    def __init__(self, location, message):
        self.location = location
        super().__init__(f"{location}: {message}")


class ValidationError(ShiftError):
    """A specification document is well-formed but semantically invalid."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class TruncationWarning(UserWarning):
    """A negative answer over an indexed alphabet may change at a larger
    truncation."""
