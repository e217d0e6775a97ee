"""Exception types raised across the package."""


class PadicMinError(Exception):
    """Base class for all errors raised by padicmin."""


class NotPrime(PadicMinError, ValueError):
    def __init__(self, value):
        super().__init__(f"{value} is not prime")
        self.value = value


class NotAUnit(PadicMinError, ValueError):
    pass


class ConstantTermNotUnit(PadicMinError, ValueError):
    pass


class NotNormalized(PadicMinError, ValueError):
    pass


class UnsupportedPrime(PadicMinError, ValueError):
    pass


class PreconditionViolated(PadicMinError):
    pass


class FamilyTooLarge(PadicMinError):
    pass


class PolyParseError(PadicMinError, ValueError):
    pass
