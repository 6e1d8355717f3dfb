"""Exception taxonomy shared by the library and the CLI exit-code mapping."""

from __future__ import annotations


class QuatGenusError(Exception):
    """Base class for all library errors."""


class InputError(QuatGenusError, ValueError):
    """Malformed input: bad coefficients, bad script, invalid adjunction request."""


class PreconditionError(QuatGenusError):
    """An operation's mathematical precondition fails (split algebra, equal pair, ...)."""


class TruncationError(QuatGenusError):
    """A finite truncation could not certify a required statement (honest UNKNOWN)."""


class SearchExhausted(PreconditionError):
    """A bounded enumeration ran out of budget before finding the requested object."""
