"""Exception types shared across the package."""


class FinactError(Exception):
    """Base class for all package errors."""


class NotAssociative(FinactError):
    """Cayley table fails associativity; carries a witness triple."""

    def __init__(self, x: int, y: int, z: int):
        self.witness = (x, y, z)
        super().__init__(f"(x*y)*z != x*(y*z) at (x,y,z)=({x},{y},{z})")


class NoIdentity(FinactError):
    pass


class NoInverse(FinactError):
    def __init__(self, x: int):
        self.witness = x
        super().__init__(f"element {x} has no inverse")


class NotLatinSquare(FinactError):
    def __init__(self, kind: str, index: int):
        self.witness = (kind, index)
        super().__init__(f"{kind} {index} is not a permutation of 0..n-1")


class UnsupportedParameter(FinactError):
    pass


class NotNormal(FinactError):
    pass


class AmbientMismatch(FinactError):
    pass


class BoundExceeded(FinactError):
    pass


class FactorMismatch(FinactError):
    pass


class SignatureMismatch(FinactError):
    pass


class TooFewFactors(FinactError):
    pass


class NotInCrossEffect(FinactError):
    pass


class NotInRetractionKernel(FinactError):
    pass


class InvalidAction(FinactError):
    def __init__(self, condition: str):
        self.condition = condition
        super().__init__(f"action table violates the {condition} condition")


class SectionNotSplitting(FinactError):
    pass


class NotNormalSubobject(FinactError):
    pass


class ParseError(FinactError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"{message}{where}")


class InvariantViolation(FinactError):
    """A sweep observed a violation of a law the implementation promises."""
