"""Exception types raised across the package."""


class PolyExtError(Exception):
    """Base class for all errors raised by polyext."""


class InvalidParameter(PolyExtError, ValueError):
    pass


class CompositionNotZero(PolyExtError, ValueError):
    """Two matrices that should compose to zero do not."""


class OrientationMismatch(PolyExtError, ValueError):
    pass


class NotAChainMap(PolyExtError, ValueError):
    pass


class NotAnAction(PolyExtError, ValueError):
    pass


class IndexOutOfRange(PolyExtError, IndexError):
    pass


class UnsupportedPair(PolyExtError):
    def __init__(self, source, target, supported):
        self.source = source
        self.target = target
        self.supported = supported
        lines = "\n  ".join(supported)
        super().__init__(
            f"Ext({source}, {target}) is not supported. Supported pairs:\n  {lines}"
        )


class UnsupportedFunctor(PolyExtError):
    pass


class OnlyOneMethod(PolyExtError):
    pass


class CrossCheckMismatch(PolyExtError):
    def __init__(self, degree, closed, chain):
        self.degree = degree
        self.closed = closed
        self.chain = chain
        super().__init__(
            f"closed form and chain-level model disagree in degree {degree}: "
            f"{closed} vs {chain}"
        )


class ParseError(PolyExtError, ValueError):
    def __init__(self, text, position, expected):
        self.text = text
        self.position = position
        self.expected = tuple(expected)
        super().__init__(
            f"cannot parse {text!r} at position {position}: expected "
            + " or ".join(self.expected)
        )
