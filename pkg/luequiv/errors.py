class LuequivError(ValueError):
    """Base class for errors raised by luequiv."""


class InvalidStateError(LuequivError):
    """A density matrix violates Hermiticity, unit trace, positivity or dimension."""


class StateFileError(LuequivError):
    """A state file could not be read or parsed."""


class FingerprintMismatchError(LuequivError):
    """Fingerprints of a different kind or family depth were compared."""
