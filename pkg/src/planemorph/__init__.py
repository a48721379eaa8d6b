"""Planar unidirectional morphs of plane graph drawings in linearly many steps."""

from .angles import Angle
from .drawing import ConvexRegion, Drawing, contract_drawing, is_contractible_onto, kernel, validate
from .errors import (
    AuditRequiresVerifiedMorphError,
    ContractNotSafeError,
    DegenerateInputError,
    EmbeddingMismatchError,
    InternalInvariantViolation,
    ParseError,
    PlanemorphError,
)
from .geometry import (
    Polygon,
    clockwise_angle,
    is_monotone_path,
    monotone_direction_path4,
    monotone_direction_polygon,
    orientation,
    perturb_direction,
    positive_projection,
)
from .plane_graph import (
    Face,
    PlaneGraph,
    contract,
    find_quasi_contractible,
    is_quasi_contractible,
    is_triconnected,
)
from .rational import Point, rat
from .steps import LinearMorphStep, Morph, is_unidirectional, verify_step

__all__ = [
    "Angle",
    "ConvexRegion",
    "Drawing",
    "Face",
    "LinearMorphStep",
    "Morph",
    "PlaneGraph",
    "Point",
    "Polygon",
    "clockwise_angle",
    "contract",
    "contract_drawing",
    "find_quasi_contractible",
    "is_contractible_onto",
    "is_monotone_path",
    "is_quasi_contractible",
    "is_triconnected",
    "is_unidirectional",
    "kernel",
    "monotone_direction_path4",
    "monotone_direction_polygon",
    "orientation",
    "perturb_direction",
    "positive_projection",
    "rat",
    "validate",
    "verify_step",
]
