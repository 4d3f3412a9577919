"""Curve invariants read off from a Newton polygon.

All functions take the Newton polygon P of a Laurent polynomial that is
assumed non-degenerate with respect to P; the answers are those of the
smooth projective model of the curve it defines.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional

from .errors import ConsistencyError, DomainError, UnsupportedCaseError
from .polygon_core import (Dim, Family, LatticeDirection, LatticePolygon, NamedFamily,
                           as_direction, hull, interior_hull, recognize)
from .width_metrics import (lattice_size, lattice_width, lattice_width_directions, width,
                            width_invariants)


class PencilKind(enum.Enum):
    EXACTLY = "exactly"
    AT_MOST = "at_most"
    INFINITE = "infinite"


@dataclass(frozen=True)
class PencilCount:
    kind: PencilKind
    n: Optional[int] = None
    directions: tuple[LatticeDirection, ...] = ()


@dataclass(frozen=True)
class PencilData:
    direction: LatticeDirection
    degree: int
    scrollar: tuple[int, ...]
    complete: bool
    rank: int
    scroll_dim: int


class NearGonalClass(enum.Enum):
    ALL_COMBINATORIAL = "all_combinatorial"
    INFINITELY_MANY = "infinitely_many"
    EXISTS_NON_COMBINATORIAL = "exists_non_combinatorial"
    NO_COMBINATORIAL_EXISTENCE_OPEN = "no_combinatorial_existence_open"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class CurveProfile:
    genus: int
    gonality: int
    gonality_pencils: PencilCount
    clifford_index: Optional[int]
    clifford_dimension: Optional[int]
    smooth_plane: bool
    near_gonal: NearGonalClass
    lw: int
    ls_interior: int
    pencils: tuple[PencilData, ...] = ()


def _need_2d(P: LatticePolygon):
    if P.dim < Dim.TWO_D:
        raise UnsupportedCaseError("curve invariants need a two-dimensional Newton polygon")


@lru_cache(maxsize=100_000)
def _hull_info(P: LatticePolygon) -> tuple[LatticePolygon, Optional[NamedFamily]]:
    H = interior_hull(P)
    return H, recognize(H)


def _is(fam: Optional[NamedFamily], family: Family, d: Optional[int] = None) -> bool:
    return fam is not None and fam.family == family and (d is None or fam.d == d)


def _sigma_hull(H: LatticePolygon, fam) -> bool:
    # (d-3)Sigma for some d >= 3, the point included
    return H.dim == Dim.POINT or _is(fam, Family.SIGMA_MULTIPLE)


def genus(P: LatticePolygon) -> int:
    _need_2d(P)
    return P.interior_count


def gonality(P: LatticePolygon) -> int:
    _need_2d(P)
    H, fam = _hull_info(P)
    if H.dim == Dim.EMPTY:
        return 1
    if _is(fam, Family.UPSILON_MULTIPLE, 1):
        return 3
    return lattice_width(H) + 2


def gonality_pencils(P: LatticePolygon) -> PencilCount:
    _need_2d(P)
    H, fam = _hull_info(P)
    if H.dim == Dim.EMPTY:
        return PencilCount(PencilKind.EXACTLY, 1)
    if _is(fam, Family.UPSILON_MULTIPLE, 1):
        return PencilCount(PencilKind.AT_MOST, 2)
    if (_sigma_hull(H, fam) or _is(fam, Family.UPSILON_MULTIPLE, 2)
            or _is(fam, Family.GAMMA51_MULTIPLE, 1)
            or _is(fam, Family.GAMMA52) or _is(fam, Family.GAMMA53)):
        return PencilCount(PencilKind.INFINITE)
    dirs = tuple(lattice_width_directions(P))
    if H.dim == Dim.SEGMENT and len(dirs) != 1:
        raise ConsistencyError(f"hyperelliptic polygon with {len(dirs)} lattice width directions")
    return PencilCount(PencilKind.EXACTLY, len(dirs), dirs)


def has_combinatorial_gonality_pencil(P: LatticePolygon) -> bool:
    return lattice_width(P) == gonality(P)


def clifford(P: LatticePolygon) -> tuple[int, int]:
    """(Clifford index, Clifford dimension)."""
    g = genus(P)
    if g == 0:
        raise UnsupportedCaseError("Clifford index is undefined in genus 0")
    H, fam = _hull_info(P)
    if g <= 3:
        return (1 if _is(fam, Family.SIGMA_MULTIPLE, 1) else 0), 1
    if _is(fam, Family.SIGMA_MULTIPLE):
        return fam.d - 1, 2
    if _is(fam, Family.UPSILON_MULTIPLE, 1):
        return 1, 1
    if _is(fam, Family.UPSILON_MULTIPLE, 2):
        return 3, 3
    return lattice_width(H), 1


def is_smooth_plane_model(P: LatticePolygon) -> bool:
    _need_2d(P)
    H, fam = _hull_info(P)
    return H.dim == Dim.EMPTY or _sigma_hull(H, fam)


def pencil_data(P: LatticePolygon, v) -> PencilData:
    v = as_direction(v)
    H, _ = _hull_info(P)
    if H.dim < Dim.TWO_D:
        raise UnsupportedCaseError("pencil data needs a two-dimensional interior hull")
    prof = width_invariants(P, v)
    E = prof.invariants
    nonneg = tuple(sorted(e for e in E if e >= 0))
    negative = len(E) - len(nonneg)
    g = P.interior_count
    dim = len(nonneg) if len(nonneg) != g else g - 1
    return PencilData(v, prof.width, nonneg, negative == 0, negative + 1, dim)


def near_gonal(P: LatticePolygon) -> NearGonalClass:
    """Classify the base-point free pencils of degree gonality + 1."""
    if genus(P) < 3:
        return NearGonalClass.NOT_APPLICABLE
    H, fam = _hull_info(P)
    if _is(fam, Family.UPSILON_MULTIPLE, 3):
        return NearGonalClass.EXISTS_NON_COMBINATORIAL
    if _is(fam, Family.GAMMA8):
        return NearGonalClass.NO_COMBINATORIAL_EXISTENCE_OPEN
    if _is(fam, Family.UPSILON_MULTIPLE, 2) or _is(fam, Family.GAMMA7):
        return NearGonalClass.INFINITELY_MANY
    if satisfies_plane_condition(H):
        return NearGonalClass.ALL_COMBINATORIAL
    return NearGonalClass.INFINITELY_MANY


def satisfies_plane_condition(H: LatticePolygon) -> bool:
    """ls(H) >= lw(H) + 2 for an interior hull H."""
    return lattice_size(H) >= lattice_width(H) + 2


def curve_profile(P: LatticePolygon) -> CurveProfile:
    _need_2d(P)
    g = P.interior_count
    H, _ = _hull_info(P)
    pencils = gonality_pencils(P)
    ci = cd = None
    if g >= 1:
        ci, cd = clifford(P)
    blocks: tuple[PencilData, ...] = ()
    if H.dim == Dim.TWO_D and pencils.directions:
        blocks = tuple(pencil_data(P, v) for v in pencils.directions)
    return CurveProfile(
        genus=g,
        gonality=gonality(P),
        gonality_pencils=pencils,
        clifford_index=ci,
        clifford_dimension=cd,
        smooth_plane=is_smooth_plane_model(P),
        near_gonal=near_gonal(P),
        lw=lattice_width(P),
        ls_interior=lattice_size(H),
        pencils=blocks,
    )


# ---------------------------------------------------------------- applications

@dataclass(frozen=True)
class CabProfile:
    polygon: LatticePolygon
    genus: int
    gonality: int


def cab_profile(a: int, b: int) -> CabProfile:
    """The triangle conv{(0,0),(b,0),(0,a)} of a C_{a,b} curve."""
    if a < 2 or b < 2 or gcd(a, b) != 1:
        raise DomainError("C_{a,b} needs coprime a, b >= 2")
    P = hull([(0, 0), (b, 0), (0, a)])
    g = (a - 1) * (b - 1) // 2
    if P.interior_count != g:
        raise ConsistencyError("genus formula disagrees with the interior point count")
    gon = gonality(P)
    if gon != min(a, b):
        raise ConsistencyError(f"gonality {gon} of C_({a},{b}) differs from min(a, b)")
    return CabProfile(P, g, gon)


@dataclass(frozen=True)
class HirzebruchProfile:
    polygon: LatticePolygon
    genus: int
    gonality: int
    pencil_degree: int
    invariants: tuple[int, ...]
    scrollar: tuple[int, ...]
    recovered_n: Optional[int]


def hirzebruch_profile(n: int, a: int, d: int) -> HirzebruchProfile:
    """Trapezoid conv{(0,0),(a+dn,0),(a,d),(0,d)}, pencil along (1,0) of degree d."""
    if n < 0 or a < 0 or d < 2 or (a == 0 and n == 0):
        raise DomainError("need n >= 0, a >= 0, d >= 2 and a + n > 0")
    P = hull([(0, 0), (a + d * n, 0), (a, d), (0, d)])
    g = d * (d - 1) * n // 2 + (d - 1) * (a - 1)
    if P.interior_count != g:
        raise ConsistencyError("genus formula disagrees with the interior point count")
    E = width_invariants(P, (1, 0)).invariants
    recovered = None
    if d > 2:
        e1 = min(E)
        num, den = 2 * g - 2 * (d - 1) * (e1 + 1), (d - 1) * (d - 2)
        if num % den:
            raise ConsistencyError("recovered n is not an integer")
        recovered = num // den
    return HirzebruchProfile(
        polygon=P,
        genus=g,
        gonality=gonality(P),
        pencil_degree=width(P, (1, 0))[0],
        invariants=E,
        scrollar=tuple(sorted(e for e in E if e >= 0)),
        recovered_n=recovered,
    )
