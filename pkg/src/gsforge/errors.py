"""Exception types shared across the library."""


class GsForgeError(Exception):
    """Base class for library errors."""


class GraphFormatError(GsForgeError):
    """Malformed graph input (graph6 or edge-list text).

    ``offset`` is the byte position of the first bad byte when known.
    """

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (byte {offset})")
        self.offset = offset


class CapabilityError(GsForgeError):
    """Requested operation is outside the supported built-in range."""


class ResourceBudgetError(GsForgeError):
    """A configurable work budget was exhausted before completion."""

    def __init__(self, message: str, budget: int):
        super().__init__(f"{message} (budget {budget})")
        self.budget = budget


class IntegrityError(GsForgeError):
    """Persistent data failed a consistency check (checksum, census, version)."""


class VerificationError(GsForgeError):
    """A compiled circuit failed its own stabilizer verification (internal bug)."""
