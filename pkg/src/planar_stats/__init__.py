"""Eccentricities, distance sums and distance counts in directed plane graphs."""
from ._accel import ACCELERATED
from .errors import NegativeCycle, PlanarStatsError, ValidationError
from .planar_core import EmbeddedGraph, ExactLength, build_embedded_graph
from .oracle import apsp_oracle
from .solver import solve, triangulate

__all__ = [
    "ACCELERATED", "EmbeddedGraph", "ExactLength", "NegativeCycle", "PlanarStatsError",
    "ValidationError", "apsp_oracle", "build_embedded_graph", "solve", "triangulate",
]
__version__ = "0.1.0"
