"""Exception types raised by the xlq modules."""


class XlqError(Exception):
    """Base class for every error raised by this package."""


class NullspaceDimensionError(XlqError):
    pass


class ConvergenceError(XlqError):
    pass


class PolePointError(XlqError):
    """Evaluation point lies too close to a singularity."""


class AmbiguityError(XlqError):
    pass


class BranchJumpError(XlqError):
    """Square-root continuation saw a phase jump it could not resolve."""


class TurningPointError(XlqError):
    pass


class PairingError(XlqError):
    pass


class BracketError(XlqError):
    pass


class GridError(XlqError):
    pass
