"""Exception hierarchy shared by every module."""


class AlgebraError(ValueError):
    """Base class for malformed input or violated contracts."""


class SignatureError(AlgebraError):
    """Unknown symbol, arity mismatch, or signatures that do not agree."""


class SizeBoundError(AlgebraError):
    """A construction would exceed the configured universe bound."""


class Inconclusive(RuntimeError):
    """A search ran out of budget before reaching a verdict.

    Kept apart from ``AlgebraError`` on purpose: callers must be able to
    tell "no" from "don't know".
    """


class NotDerivable(AlgebraError):
    """The requested pair is not in the generated congruence."""


class LiftError(AssertionError):
    """A failure certificate did not survive lifting to the matrix square."""
