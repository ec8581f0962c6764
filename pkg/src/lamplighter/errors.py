from __future__ import annotations

"""Exception hierarchy shared by the lamplighter modules."""


class LamplighterError(Exception):
    """Base class for every error raised by this package."""


class StructureMismatch(LamplighterError, ValueError):
    """Operands live in different rings, depths or alphabets."""


class NotAUnit(LamplighterError, ArithmeticError):
    """An inverse was requested for a non-unit."""


class NotInvertible(LamplighterError):
    """An automaton has an output row that is not a permutation."""


class DepthExhausted(LamplighterError):
    """A shift or section was taken of a depth-0 object."""


class ResourceLimit(LamplighterError):
    """An enumeration would exceed the configured budget."""


class PreconditionFailed(LamplighterError):
    """Inputs do not satisfy the hypotheses an operation needs."""


class SpecParseError(LamplighterError, ValueError):
    """A ring, element, group or word string could not be parsed."""


__all__ = [
    "LamplighterError",
    "StructureMismatch",
    "NotAUnit",
    "NotInvertible",
    "DepthExhausted",
    "ResourceLimit",
    "PreconditionFailed",
    "SpecParseError",
]
