"""Exception types raised by the library."""


class M1PlusError(Exception):
    """Base class for all library errors."""


class SectorError(M1PlusError, ValueError):
    """A mode index or vector belongs to the wrong sector."""


class ParseError(M1PlusError, ValueError):
    """An element string does not match the element grammar."""


class DegenerateType(M1PlusError, ValueError):
    """The top Whittaker parameter (or eigenvalue) is zero."""


class NotWhittaker(M1PlusError, ValueError):
    """Parameters describe an ordinary module (s would be < 2)."""


class IrrationalParameter(M1PlusError, ValueError):
    """The solution exists over C but not over Q."""


class DegenerateInput(M1PlusError, ValueError):
    """Evaluation points are not pairwise distinct."""


class InvariantError(M1PlusError, RuntimeError):
    """An internal consistency check failed (a bug, not bad input)."""
