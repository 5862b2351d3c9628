"""Exact p-adic tools for postcritically finite maps: valuations, Newton
polygons, power-series norms on disks, rational maps with good reduction,
unicritical families, iterative logarithms and flexible Lattes maps."""

from .errors import PadicDynamoError
from .exact_scalar import INF, CappedPadic, LogRadius, as_scalar, valuation
from .poly import ExactPoly
from .ratmaps import Mobius, RationalMap, oo

__version__ = "0.1.0"

__all__ = [
    "INF",
    "CappedPadic",
    "ExactPoly",
    "LogRadius",
    "Mobius",
    "PadicDynamoError",
    "RationalMap",
    "as_scalar",
    "oo",
    "valuation",
]
