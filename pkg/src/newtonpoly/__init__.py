"""Curve invariants from Newton polygons."""

from .errors import ConsistencyError, DomainError, UnsupportedCaseError
from .polygon_core import (Dim, Family, LatticeDirection, LatticePolygon, NamedFamily,
                           RationalPolygon, TorusDivisor, UnimodularMap, apply, are_equivalent,
                           canonical_form, counts, divisor_polygon, hull, interior_hull,
                           max_polygon, minkowski_sum, mixed_volume, named_polygon,
                           outward_polygon, parse_polygon, recognize, volume2)
from .width_metrics import (WidthProfile, directions_with_width_at_most, lattice_size,
                            lattice_width, lattice_width_directions, provably_distinct_pencils,
                            width, width_invariants)
from .curve_invariants import (CurveProfile, NearGonalClass, PencilCount, PencilData, PencilKind,
                               cab_profile, clifford, curve_profile, genus, gonality,
                               gonality_pencils, has_combinatorial_gonality_pencil,
                               hirzebruch_profile, is_smooth_plane_model, near_gonal, pencil_data)

__version__ = "0.1.0"
