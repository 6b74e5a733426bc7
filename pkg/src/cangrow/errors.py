"""Exception hierarchy shared by every cangrow module."""


class CangrowError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""


class ParseError(CangrowError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class NotArtinian(CangrowError):
    """The quotient is positive-dimensional.

    Only dimension-zero rings are handled; for a Cohen-Macaulay ring of
    positive dimension, reduce both the ring and its canonical module modulo
    a maximal regular sequence first and supply that Artinian quotient.
    """


class UnitInIdeal(CangrowError):
    pass


class SizeCap(CangrowError):
    """A configured size or work budget would be exceeded."""


class ZeroModule(CangrowError):
    pass


class HypothesisFails(CangrowError):
    pass


class CacheCorrupt(CangrowError):
    pass
