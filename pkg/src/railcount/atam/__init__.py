"""Abstract Tile Assembly Model with bit-encoding glues and layer analysis."""

from .model import (
    NULL,
    SIDES,
    AssemblyResult,
    Glue,
    Placement,
    Region,
    RegionOverflow,
    TileSystem,
    TileType,
    assemble,
    attachable,
    is_connected,
)
from .curve import (
    LHS,
    RHS,
    CurveError,
    CurveOffAssembly,
    GlueCurve,
    bit_locations,
    bits_along_curve,
)
from .layer import (
    CompileError,
    LayerError,
    LayerReport,
    NonConfinedGrowth,
    NotDirected,
    NotValidReport,
    NTooSmall,
    ReadMismatch,
    SeedMismatch,
    Unclean,
    check_layer_computes,
    compile_to_railway,
    iterate_layers,
)
from .io import Bundle
