"""Exception types raised by the engine."""

from __future__ import annotations


class MGTError(Exception):
    pass


class SizeLimitError(MGTError):
    """A group closure grew past the configured maximum order."""


class NotExactError(MGTError):
    """Subgroups do not give an exact factorization of the ambient group."""


class NotAGroupError(MGTError):
    """A multiplication table failed a group axiom.

    ``witness`` carries the offending inputs, e.g. ``{"axiom": "assoc", "a": 1, "b": 2, "c": 3}``.
    """

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class NotComposableError(MGTError):
    pass


class FillerError(MGTError):
    pass


class UnsupportedModeError(MGTError):
    pass


class SpecParseError(MGTError, ValueError):
    pass
