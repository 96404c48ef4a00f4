"""Exception hierarchy shared across the toolkit."""


class IcefoldError(Exception):
    """Base class for all domain errors."""


class NotComposable(IcefoldError):
    pass


class NotClosed(IcefoldError):
    pass


class UnknownArrow(IcefoldError):
    pass


class UnknownVertex(IcefoldError):
    pass


class HasLoops(IcefoldError):
    pass


class HasTwoCycles(IcefoldError):
    pass


class NotWellDefined(IcefoldError):
    """Folding result depends on the orbit representative chosen."""


class NotAdmissible(IcefoldError):
    pass


class FrozenDirection(IcefoldError):
    pass


class FrozenOrbit(IcefoldError):
    pass


class OrderDependent(IcefoldError):
    """Orbit mutation composed in two orders disagrees (G-loop present)."""


class NonAbelianStabilizer(IcefoldError):
    pass


class NotInvariant(IcefoldError):
    pass


class DegreeMismatch(IcefoldError):
    pass


class ChainMapFailure(IcefoldError):
    def __init__(self, generator, residual):
        self.generator = generator
        self.residual = residual
        super().__init__(f"chain map fails on {generator!r}: residual {residual}")


class NonExactDivision(IcefoldError):
    pass


class NonPolynomialCount(IcefoldError):
    pass


class BudgetExceeded(IcefoldError):
    pass


class ParseError(IcefoldError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(IcefoldError):
    pass
