"""Temperature-1 tile assembly engine and pumpability-analysis toolkit."""

from .core import (
    Assembly,
    Conflict,
    DihedralTransform,
    EndpointMismatch,
    Glue,
    MalformedPath,
    NoBond,
    NULL_GLUE,
    Occupied,
    PathAssembly,
    PlacedTile,
    PumpkitError,
    SeedConflict,
    Side,
    TileSystem,
    TileType,
    UnknownTile,
    attach,
    chebyshev_distance,
    concat,
    is_producible_assembly,
    is_producible_path,
    transform,
)

__version__ = "0.1.0"

__all__ = [
    "Assembly",
    "Conflict",
    "DihedralTransform",
    "EndpointMismatch",
    "Glue",
    "MalformedPath",
    "NoBond",
    "NULL_GLUE",
    "Occupied",
    "PathAssembly",
    "PlacedTile",
    "PumpkitError",
    "SeedConflict",
    "Side",
    "TileSystem",
    "TileType",
    "UnknownTile",
    "attach",
    "chebyshev_distance",
    "concat",
    "is_producible_assembly",
    "is_producible_path",
    "transform",
    "__version__",
]
