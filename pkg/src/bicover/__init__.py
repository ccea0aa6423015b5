"""Covering a convex polygon with two congruent disks.

The main entry points are :func:`decide` (is radius r enough?) and
:func:`solve` (smallest radius, with witness disks).
"""
from .decision import DecisionResult, decide
from .geom import BoundaryPoint, ConvexPolygon, Disk, Point, validate_polygon
from .optimizer import SolveResult, solve, verify_cover

__version__ = "0.1.0"

__all__ = [
    "BoundaryPoint", "ConvexPolygon", "DecisionResult", "Disk", "Point", "SolveResult",
    "decide", "solve", "validate_polygon", "verify_cover", "__version__",
]
