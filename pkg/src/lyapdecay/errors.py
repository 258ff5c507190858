"""Exception hierarchy shared by every module of the package."""


class LyapDecayError(Exception):
    """Base class for all numerical failures raised by this package."""


class NotHermitian(LyapDecayError, ValueError):
    pass


class NoConvergence(LyapDecayError):
    pass


class Singular(LyapDecayError):
    pass


class Unstable(LyapDecayError, ValueError):
    pass


class NotControllable(LyapDecayError, ValueError):
    pass


class SolveFailure(LyapDecayError):
    pass


class TooLarge(LyapDecayError, ValueError):
    pass


class LevelOutOfRange(LyapDecayError, ValueError):
    pass


class OpenContour(LyapDecayError):
    """An epsilon level set touches the edge of the grid; enlarge the box."""


class NotInRightHalfPlane(LyapDecayError, ValueError):
    pass


class GenerationFailed(LyapDecayError):
    pass


class SoundnessViolation(LyapDecayError):
    """A bound flagged valid fell below the quantity it claims to bound."""
