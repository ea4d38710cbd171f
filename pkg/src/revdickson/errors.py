"""Exception hierarchy shared by every module of the package."""


class DicksonError(Exception):
    """Base class for all errors raised by revdickson."""


class EvenPrime(DicksonError, ValueError):
    pass


class Composite(DicksonError, ValueError):
    pass


class FieldOverflow(DicksonError, OverflowError):
    """p**e does not fit in 64 bits."""


class MixedCharacteristic(DicksonError, ValueError):
    pass


class ExponentOverflow(DicksonError, OverflowError):
    """An exponent would exceed the 64-bit bound."""


class BadIndex(DicksonError, ValueError):
    pass


class UnknownItem(DicksonError, KeyError):
    pass


class ConstantTermPresent(DicksonError, ValueError):
    pass


class FieldTooLarge(DicksonError, ValueError):
    pass
