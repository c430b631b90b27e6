"""Error taxonomy shared by all modules.

Four categories, matching the CLI exit codes: malformed or inconsistent
input (2), a configured size cap exceeded (3), a hypothesis that
the input fails to satisfy (4), and internal consistency failures that
indicate a bug rather than a bad input.
"""


class RelmetricError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InputError(RelmetricError):
    """Malformed, incomplete or inconsistent input data."""

    exit_code = 2


class CapError(RelmetricError):
    """A configured size or length cap was exceeded."""

    exit_code = 3


class HypothesisError(RelmetricError):
    """The input fails a hypothesis required by the requested operation."""

    exit_code = 4


class StructureError(HypothesisError):
    """The input lacks structural properties (reflexivity, involution)
    that the requested operation needs."""


class InternalCheckError(RelmetricError):
    """An internal cross-check failed; this signals a bug, not bad input."""

    exit_code = 1
