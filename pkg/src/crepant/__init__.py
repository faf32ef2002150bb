"""Exact-arithmetic checks of crepant resolution comparisons for A1, Sym^n(C^2)
and polyhedral quotients."""
from .coeff import GaussianRational, Poly2, RatFunc, T1, T2
from .errors import CrepantError
from .partitions import Partition, partitions
from .series import SeriesRing, TransformSpec, TruncatedSeries, UniRatFunc, pade, pade_auto

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "Poly2",
    "RatFunc",
    "T1",
    "T2",
    "CrepantError",
    "Partition",
    "partitions",
    "SeriesRing",
    "TransformSpec",
    "TruncatedSeries",
    "UniRatFunc",
    "pade",
    "pade_auto",
]
