"""Numerical verification of anti-invariant submersions from Kenmotsu manifolds."""

from .config import DEFAULT, Tolerances
from .contact import AlmostContactStructure, KenmotsuManifold, example_ken, kenmotsu_from_kaehler
from .errors import ConfigError, GeometryError
from .geometry import ChartManifold, VectorField, sample_points
from .report import CheckRecord, VerificationReport
from .submersion import SmoothMap
from .suite import RunConfig, run_all
from .warped import WarpedProduct, make_warped

__all__ = [
    "DEFAULT",
    "AlmostContactStructure",
    "ChartManifold",
    "CheckRecord",
    "ConfigError",
    "GeometryError",
    "KenmotsuManifold",
    "RunConfig",
    "SmoothMap",
    "Tolerances",
    "VectorField",
    "VerificationReport",
    "WarpedProduct",
    "example_ken",
    "kenmotsu_from_kaehler",
    "make_warped",
    "run_all",
    "sample_points",
]

__version__ = "0.1.0"
