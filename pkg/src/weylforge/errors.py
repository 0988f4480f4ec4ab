"""Exception types shared across the package."""


class WeylforgeError(Exception):
    """Base class for all package errors."""


class GridMismatch(WeylforgeError):
    pass


class AnnulusTooLarge(WeylforgeError):
    pass


class ScaleUnresolvable(WeylforgeError):
    pass


class DeltaUnresolvable(WeylforgeError):
    pass


class MarginTooWide(WeylforgeError):
    pass


class ShiftTooSmall(WeylforgeError):
    pass


class NotCoprime(WeylforgeError):
    pass


class IndexOutOfRange(WeylforgeError):
    pass


class SpectrumOverflow(WeylforgeError):
    pass


class OrthogonalityViolation(WeylforgeError):
    pass


class ResolutionTooLow(WeylforgeError):
    pass


class SupportViolation(WeylforgeError):
    pass


class BlockOverflow(WeylforgeError):
    pass


class EmptyExceedanceSet(WeylforgeError):
    pass


class MultiplierNotSmallO(WeylforgeError):
    pass


class IntervalTooSmall(WeylforgeError):
    pass


class CarrierTooSmall(WeylforgeError):
    pass


class HorizonTooShort(WeylforgeError):
    pass


class DensityUnreachable(WeylforgeError):
    pass


class InconsistentLevels(WeylforgeError):
    pass


class ConfigInvalid(WeylforgeError):
    pass


class IoFailure(WeylforgeError):
    pass
