"""Exception hierarchy shared by every conez module."""


class ConeZError(ValueError):
    """Base class for all domain errors raised by conez."""


class NonFinite(ConeZError):
    pass


class DimensionMismatch(ConeZError):
    pass


class WrongDimension(DimensionMismatch):
    pass


class NotSymmetric(ConeZError):
    pass


class NoConvergence(ConeZError):
    pass


class NotPSD(ConeZError):
    pass


class NotSkew(ConeZError):
    pass


class NotMember(ConeZError):
    pass


class NotRankOne(ConeZError):
    pass


class DegenerateDraw(ConeZError):
    pass
