from .coamoeba import build_coamoeba, category_of, cover_category, quotient_by_sublattice
from .permutohedron import build_permutohedron, build_tessellation, point_location

__all__ = [
    "build_coamoeba",
    "build_permutohedron",
    "build_tessellation",
    "category_of",
    "cover_category",
    "point_location",
    "quotient_by_sublattice",
]
