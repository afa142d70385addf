"""Exception types raised across the package."""

from __future__ import annotations


class BLRingError(Exception):
    """Base class for every error raised by blrings."""


class RingAxiomError(BLRingError, ValueError):
    """Operation tables violate a ring axiom; ``witness`` holds the offending elements."""

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message if not witness else f"{message} (witness {witness})")
        self.witness = witness


class StructureConstantError(RingAxiomError):
    pass


class OrderCapError(BLRingError):
    pass


class IdealCapError(BLRingError):
    pass


class NotAnIdealError(BLRingError, ValueError):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message if not witness else f"{message} (witness {witness})")
        self.witness = witness


class MixedRingError(BLRingError, ValueError):
    """Ideals from different parent rings were combined."""


class LatticeError(BLRingError):
    """A lattice table or axiom check failed where it must not."""


class NotBLError(BLRingError, ValueError):
    pass


class NotPrimeError(BLRingError, ValueError):
    pass


class NotUnitalError(BLRingError, ValueError):
    pass


class InconclusiveSearch(BLRingError):
    """Isomorphism search hit its assignment budget before deciding."""


class RingSpecError(BLRingError, ValueError):
    """Ring-spec string could not be parsed; ``position`` is a 0-based offset."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        detail = message
        if text:
            detail = f"{message} at position {position}\n  {text}\n  {' ' * position}^"
        super().__init__(detail)
