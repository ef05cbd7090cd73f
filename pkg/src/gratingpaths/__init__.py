"""Diffraction predictions for photon and electron gratings built from path amplitudes."""

from .core import CODATA, DomainError, KinematicState, PhysicalConstants, geometric_path_sum
from .electron_grating import ElectronGratingConfig, Hypothesis, MomentumDistribution
from .photon_grating import PhotonGratingConfig
from .profile import IntensityProfile, Peak

__all__ = [
    "CODATA",
    "DomainError",
    "ElectronGratingConfig",
    "Hypothesis",
    "IntensityProfile",
    "KinematicState",
    "MomentumDistribution",
    "Peak",
    "PhotonGratingConfig",
    "PhysicalConstants",
    "geometric_path_sum",
]

__version__ = "0.1.0"
