"""Exception types raised across the package."""


class BilinrankError(Exception):
    """Base class for all package errors."""


# finite fields and polynomials
class NonPrimeCharacteristic(BilinrankError, ValueError):
    pass


class ReducibleModulus(BilinrankError, ValueError):
    pass


class NoIrreducibleFound(BilinrankError, RuntimeError):
    pass


class MixedFields(BilinrankError, ValueError):
    pass


class DivisionByZero(BilinrankError, ZeroDivisionError):
    pass


class NonMonic(BilinrankError, ValueError):
    pass


class ReducibleLocalParameter(BilinrankError, ValueError):
    pass


# function field
class PoleAtPlace(BilinrankError, ValueError):
    pass


# algorithm construction
class UnsupportedBase(BilinrankError, ValueError):
    pass


class InsufficientPlaces(BilinrankError, ValueError):
    pass


class ConditionsNotMet(BilinrankError, ValueError):
    pass


class FieldMismatch(BilinrankError, ValueError):
    pass


# tower bounds
class StepTooSmall(BilinrankError, ValueError):
    pass


class OutOfRange(BilinrankError, ValueError):
    pass


class NoDataForN(BilinrankError, ValueError):
    pass


# file formats
class SchemaError(BilinrankError, ValueError):
    pass
