"""Exception hierarchy shared by all engines."""


class SyscatError(Exception):
    """Base class for every error raised by syscat_lab."""


class ParseError(SyscatError, ValueError):
    pass


# mesh-geometry

class MeshError(SyscatError):
    pass


class NotClosedSurface(MeshError):
    pass


class TriangleInequalityViolated(MeshError):
    def __init__(self, face, lengths):
        self.face = tuple(face)
        self.lengths = tuple(lengths)
        super().__init__(f"face {self.face} violates the strict triangle inequality "
                         f"with side lengths {self.lengths}")


class Disconnected(MeshError):
    pass


class NoNontrivialClass(MeshError):
    pass


class CoverTooLarge(MeshError):
    pass


class StepTooLarge(MeshError):
    pass


# lattice-tori

class NotPositiveDefinite(SyscatError, ValueError):
    pass


class UnsupportedRank(SyscatError, ValueError):
    pass


# cdga-engine

class AlgebraError(SyscatError):
    pass


class DegreeMismatch(AlgebraError):
    pass


class NotSquareZero(AlgebraError):
    def __init__(self, generator):
        self.generator = generator
        super().__init__(f"d(d({generator})) != 0")


class CapExceeded(AlgebraError):
    pass


class ProductsNotZero(AlgebraError):
    pass


class NoFundamentalClass(AlgebraError):
    pass


# category-bounds

class InconsistentDescriptor(SyscatError, ValueError):
    pass


class InvalidPartition(SyscatError, ValueError):
    pass


class UnknownName(SyscatError, KeyError):
    pass


# cli-reporting

class ConfigError(SyscatError, ValueError):
    pass
