"""Singular value decay of Lyapunov solutions and numerical-abscissa bounds."""
from . import bounds, densela, io, lyap, models, spectral
from .errors import (
    GenerationFailed,
    LevelOutOfRange,
    LyapDecayError,
    NoConvergence,
    NotControllable,
    NotHermitian,
    NotInRightHalfPlane,
    OpenContour,
    Singular,
    SolveFailure,
    SoundnessViolation,
    TooLarge,
    Unstable,
)
from .lyap import LyapunovProblem, SolutionSpectrum, solve_lyapunov, solve_lyapunov_oracle
from .spectral import epsilon_contour, numerical_abscissa, numerical_range, resolvent_grid

__version__ = "0.1.0"

__all__ = [
    "bounds",
    "densela",
    "io",
    "lyap",
    "models",
    "spectral",
    "GenerationFailed",
    "LevelOutOfRange",
    "LyapDecayError",
    "NoConvergence",
    "NotControllable",
    "NotHermitian",
    "NotInRightHalfPlane",
    "OpenContour",
    "Singular",
    "SolveFailure",
    "SoundnessViolation",
    "TooLarge",
    "Unstable",
    "LyapunovProblem",
    "SolutionSpectrum",
    "solve_lyapunov",
    "solve_lyapunov_oracle",
    "epsilon_contour",
    "numerical_abscissa",
    "numerical_range",
    "resolvent_grid",
]
