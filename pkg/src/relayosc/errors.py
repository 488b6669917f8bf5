"""Exception types shared across the package."""


class RelayOscError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(RelayOscError, ValueError):
    """A vector argument violates its contract (non-finite entries,
    length mismatch, values outside {-1, 0, +1} for sign patterns, ...)."""


class InvalidSpecError(RelayOscError, ValueError):
    """A system description is malformed (pole outside (0, 1), zero gain,
    negative delay, unknown JSON layout, ...)."""


class TruncationError(RelayOscError, ValueError):
    """A raw-sample kernel cannot reach the requested accuracy because its
    declared tail bound is too large."""


class UndecidableError(RelayOscError, RuntimeError):
    """A strict inequality could not be decided within the configured
    horizon and the available tail bounds."""


class EnumerationLimitError(RelayOscError, ValueError):
    """An exhaustive enumeration was requested beyond its size guard."""


class NotApplicableError(RelayOscError, ValueError):
    """The requested analysis does not apply to this system (for example
    period bounds for a delay-free loop)."""


class AlgebraicLoopError(RelayOscError, ValueError):
    """Time stepping is impossible because the loop has no delay: the relay
    input at time t would depend on the relay output at time t."""
