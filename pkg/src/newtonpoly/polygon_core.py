"""Exact lattice polygon geometry.

Everything here works on Python integers (and ``Fraction`` for the few
rational constructions), so there is no rounding anywhere.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key, lru_cache
from math import gcd, isqrt
from typing import Iterable, Optional, Sequence

from .errors import DomainError, UnsupportedCaseError

Point = tuple[int, int]


class Dim(enum.IntEnum):
    EMPTY = -1
    POINT = 0
    SEGMENT = 1
    TWO_D = 2


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable) -> list:
    """Strict convex hull (collinear points dropped), CCW from the least point.

    Works for any exactly comparable coordinates (int or Fraction).
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class LatticeDirection:
    """Primitive vector (a, b) with b > 0, or b == 0 and a > 0."""

    a: int
    b: int

    def __post_init__(self):
        if gcd(self.a, self.b) != 1:
            raise DomainError(f"direction ({self.a},{self.b}) is not primitive")
        if not (self.b > 0 or (self.b == 0 and self.a > 0)):
            raise DomainError(
                f"direction ({self.a},{self.b}) is not in canonical sign; "
                "use LatticeDirection.of")

    @classmethod
    def of(cls, a: int, b: int) -> "LatticeDirection":
        """Canonical representative of the pair +-(a, b)."""
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        return cls(a, b)

    def __iter__(self):
        yield self.a
        yield self.b

    def sort_key(self):
        return (self.b, self.a)

    def __str__(self):
        return f"{self.a},{self.b}"


def as_direction(v) -> LatticeDirection:
    if isinstance(v, LatticeDirection):
        return v
    a, b = v
    return LatticeDirection.of(int(a), int(b))


@dataclass(frozen=True)
class UnimodularMap:
    """p -> A p + t with det A = +-1."""

    matrix: tuple[tuple[int, int], tuple[int, int]]
    translation: tuple[int, int] = (0, 0)

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        m = ((int(a), int(b)), (int(c), int(d)))
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", tuple(int(t) for t in self.translation))
        if a * d - b * c not in (1, -1):
            raise DomainError(f"matrix {m} is not unimodular")

    def __call__(self, p: Point) -> Point:
        (a, b), (c, d) = self.matrix
        return (a * p[0] + b * p[1] + self.translation[0],
                c * p[0] + d * p[1] + self.translation[1])


def _make(verts: tuple) -> "LatticePolygon":
    # trusted constructor: verts already is the normalized hull
    poly = object.__new__(LatticePolygon)
    object.__setattr__(poly, "vertices", verts)
    return poly


@dataclass(frozen=True)
class LatticePolygon:
    """Convex hull of finitely many lattice points.

    ``vertices`` are the extreme points in counterclockwise order starting
    at the lexicographically least one. Build instances with :func:`hull`.
    """

    vertices: tuple[Point, ...] = ()

    def __post_init__(self):
        verts = tuple((int(x), int(y)) for x, y in self.vertices)
        if tuple(convex_hull(verts)) != verts:
            raise DomainError("vertices must be the CCW hull starting at the least vertex")
        object.__setattr__(self, "vertices", verts)

    @property
    def dim(self) -> Dim:
        n = len(self.vertices)
        return Dim(min(n, 3) - 1)

    def __repr__(self):
        return f"LatticePolygon({format_polygon(self)})"

    @cached_property
    def volume2(self) -> int:
        v = self.vertices
        if len(v) < 3:
            return 0
        s = 0
        for i in range(len(v)):
            x0, y0 = v[i - 1]
            x1, y1 = v[i]
            s += x0 * y1 - x1 * y0
        return s

    @cached_property
    def boundary_count(self) -> int:
        v = self.vertices
        if len(v) <= 1:
            return len(v)
        if len(v) == 2:
            return gcd(v[1][0] - v[0][0], v[1][1] - v[0][1]) + 1
        return sum(gcd(v[i][0] - v[i - 1][0], v[i][1] - v[i - 1][1]) for i in range(len(v)))

    @cached_property
    def interior_count(self) -> int:
        if len(self.vertices) < 3:
            return 0
        return (self.volume2 - self.boundary_count + 2) // 2

    @property
    def lattice_count(self) -> int:
        return self.interior_count + self.boundary_count

    @cached_property
    def halfplanes(self) -> tuple[tuple[int, int, int], ...]:
        """Inward edge inequalities nx*x + ny*y >= c, primitive normals, edge order."""
        v = self.vertices
        if len(v) < 3:
            raise UnsupportedCaseError("half-plane description needs a 2D polygon")
        out = []
        for i in range(len(v)):
            (px, py), (qx, qy) = v[i], v[(i + 1) % len(v)]
            ex, ey = qx - px, qy - py
            g = gcd(ex, ey)
            nx, ny = -ey // g, ex // g
            out.append((nx, ny, nx * px + ny * py))
        return tuple(out)

    def _rows(self, shift: int):
        v = self.vertices
        ys = [p[1] for p in v]
        hp = self.halfplanes
        for y in range(min(ys), max(ys) + 1):
            lo = hi = None
            ok = True
            for nx, ny, c in hp:
                r = c + shift - ny * y
                if nx > 0:
                    t = -(-r // nx)
                    if lo is None or t > lo:
                        lo = t
                elif nx < 0:
                    t = (-r) // (-nx)
                    if hi is None or t < hi:
                        hi = t
                elif r > 0:
                    ok = False
                    break
            if ok and lo <= hi:
                yield y, lo, hi

    @cached_property
    def interior_points(self) -> tuple[Point, ...]:
        if len(self.vertices) < 3:
            return ()
        return tuple((x, y) for y, lo, hi in self._rows(1) for x in range(lo, hi + 1))

    def lattice_points(self) -> list[Point]:
        v = self.vertices
        if len(v) <= 1:
            return list(v)
        if len(v) == 2:
            (x0, y0), (x1, y1) = v
            g = gcd(x1 - x0, y1 - y0)
            dx, dy = (x1 - x0) // g, (y1 - y0) // g
            return [(x0 + k * dx, y0 + k * dy) for k in range(g + 1)]
        return [(x, y) for y, lo, hi in self._rows(0) for x in range(lo, hi + 1)]

    def contains(self, p) -> bool:
        """Membership test (exact, accepts rational points)."""
        v = self.vertices
        if len(v) == 0:
            return False
        if len(v) == 1:
            return tuple(p) == v[0]
        if len(v) == 2:
            return _cross(v[0], v[1], p) == 0 and min(v)[0] <= p[0] <= max(v)[0] and \
                min(a[1] for a in v) <= p[1] <= max(a[1] for a in v)
        return all(nx * p[0] + ny * p[1] >= c for nx, ny, c in self.halfplanes)

    @cached_property
    def canonical_vertices(self) -> tuple[Point, ...]:
        return _canonical_vertices(self.vertices)


# ---------------------------------------------------------------- construction

def hull(points: Iterable[Sequence[int]]) -> LatticePolygon:
    pts = [(int(p[0]), int(p[1])) for p in points]
    return _make(tuple(convex_hull(pts)))


EMPTY = _make(())


def volume2(P: LatticePolygon) -> int:
    return P.volume2


def counts(P: LatticePolygon) -> tuple[int, int, int]:
    """(lattice, boundary, interior) point counts."""
    return P.lattice_count, P.boundary_count, P.interior_count


def minkowski_sum(P: LatticePolygon, Q: LatticePolygon) -> LatticePolygon:
    if not P.vertices or not Q.vertices:
        raise DomainError("Minkowski sum with an empty polygon")
    if P.dim < Dim.TWO_D or Q.dim < Dim.TWO_D:
        return hull((p[0] + q[0], p[1] + q[1]) for p in P.vertices for q in Q.vertices)
    A = _rotate_to_bottom(P.vertices)
    B = _rotate_to_bottom(Q.vertices)
    n, m = len(A), len(B)
    i = j = 0
    out = []
    # merge the two edge sequences by slope
    while i < n or j < m:
        a, b = A[i % n], B[j % m]
        out.append((a[0] + b[0], a[1] + b[1]))
        ea = (A[(i + 1) % n][0] - a[0], A[(i + 1) % n][1] - a[1])
        eb = (B[(j + 1) % m][0] - b[0], B[(j + 1) % m][1] - b[1])
        c = ea[0] * eb[1] - ea[1] * eb[0]
        if j == m or (i < n and c > 0):
            i += 1
        elif i == n or c < 0:
            j += 1
        else:
            i += 1
            j += 1
    return hull(out)


def _rotate_to_bottom(verts):
    k = min(range(len(verts)), key=lambda i: (verts[i][1], verts[i][0]))
    return verts[k:] + verts[:k]


def mixed_volume(P: LatticePolygon, Q: LatticePolygon) -> int:
    """MV(P,Q) = Vol(P+Q) - Vol(P) - Vol(Q), normalized so MV(S,S) = 1."""
    s = minkowski_sum(P, Q)
    twice = s.volume2 - P.volume2 - Q.volume2
    if twice % 2:
        raise AssertionError("odd doubled mixed volume")
    return twice // 2


def apply(U: UnimodularMap, P: LatticePolygon) -> LatticePolygon:
    return hull(U(p) for p in P.vertices)


def translate(P: LatticePolygon, t: Point) -> LatticePolygon:
    return _make(tuple((x + t[0], y + t[1]) for x, y in P.vertices))


def scale(P: LatticePolygon, d: int) -> LatticePolygon:
    if d < 0:
        raise DomainError("negative scale")
    if d == 0:
        return _make(((0, 0),)) if P.vertices else EMPTY
    return _make(tuple((d * x, d * y) for x, y in P.vertices))


# ---------------------------------------------------------------- canonical form

def _best_placement(verts: tuple) -> tuple:
    n = len(verts)
    best = None
    for i in range(n):
        px, py = verts[i]
        qx, qy = verts[(i + 1) % n]
        ex, ey = qx - px, qy - py
        g = gcd(ex, ey)
        ux, uy = ex // g, ey // g
        _, al, be = egcd(ux, uy)
        # [[al, be], [-uy, ux]] sends u to (1, 0); then shear to fix the next vertex
        sx, sy = verts[(i + 2) % n]
        dx, dy = sx - px, sy - py
        x1 = al * dx + be * dy
        y1 = ux * dy - uy * dx
        k = -(x1 // y1)
        m11, m12 = al - k * uy, be + k * ux
        cand = tuple((m11 * (x - px) + m12 * (y - py), ux * (y - py) - uy * (x - px))
                     for x, y in verts[i:] + verts[:i])
        if best is None or cand < best:
            best = cand
    return best


def _canonical_vertices(verts: tuple) -> tuple:
    n = len(verts)
    if n == 0:
        return ()
    if n == 1:
        return ((0, 0),)
    if n == 2:
        return ((0, 0), (gcd(verts[1][0] - verts[0][0], verts[1][1] - verts[0][1]), 0))
    mirrored = tuple((-x, y) for x, y in reversed(verts))
    best = min(_best_placement(verts), _best_placement(mirrored))
    k = best.index(min(best))
    return best[k:] + best[:k]


def canonical_key(P: LatticePolygon) -> tuple:
    """Vertex tuple of the canonical representative (hashable class id)."""
    return P.canonical_vertices


def canonical_form(P: LatticePolygon) -> LatticePolygon:
    return _make(P.canonical_vertices)


def are_equivalent(P: LatticePolygon, Q: LatticePolygon) -> bool:
    if len(P.vertices) != len(Q.vertices) or P.volume2 != Q.volume2:
        return False
    return P.canonical_vertices == Q.canonical_vertices


# ---------------------------------------------------------------- interior and outward

def interior_hull(P: LatticePolygon) -> LatticePolygon:
    return hull(P.interior_points)


@dataclass(frozen=True)
class RationalPolygon:
    """Convex polygon with exact rational vertices (CCW, least vertex first)."""

    vertices: tuple[tuple[Fraction, Fraction], ...]

    @property
    def is_lattice(self) -> bool:
        return all(x.denominator == 1 and y.denominator == 1 for x, y in self.vertices)

    def to_lattice(self) -> LatticePolygon:
        if not self.is_lattice:
            raise UnsupportedCaseError("polygon has non-integral vertices")
        return hull((int(x), int(y)) for x, y in self.vertices)


def _meet(h1, h2):
    """Homogeneous intersection (X, Y, D), D > 0, of two boundary lines."""
    a1, b1, c1 = h1
    a2, b2, c2 = h2
    det = a1 * b2 - b1 * a2
    if det == 0:
        return None
    X, Y = c1 * b2 - c2 * b1, a1 * c2 - a2 * c1
    if det < 0:
        X, Y, det = -X, -Y, -det
    return X, Y, det


def _feasible(pt, hps):
    X, Y, D = pt
    return all(a * X + b * Y >= c * D for a, b, c in hps)


def _halfplane_polygon(hps, cyclic_order=True) -> RationalPolygon:
    """Intersection of half-planes a*x + b*y >= c (assumed bounded).

    When the constraints are listed in angular order the adjacent
    intersections usually are all the vertices; otherwise fall back to all
    pairs.
    """
    pts = None
    if cyclic_order:
        cand = [_meet(hps[i - 1], hps[i]) for i in range(len(hps))]
        if all(p is not None and _feasible(p, hps) for p in cand):
            pts = cand
    if pts is None:
        pts = []
        for i in range(len(hps)):
            for j in range(i + 1, len(hps)):
                p = _meet(hps[i], hps[j])
                if p is not None and _feasible(p, hps):
                    pts.append(p)
    verts = convex_hull((Fraction(X, D), Fraction(Y, D)) for X, Y, D in pts)
    return RationalPolygon(tuple(verts))


def outward_polygon(G: LatticePolygon) -> tuple[RationalPolygon, bool]:
    """Move every edge of G out by one lattice step; returns (polygon, is_lattice)."""
    if G.dim < Dim.TWO_D:
        raise UnsupportedCaseError("outward polygon needs a 2D polygon")
    R = _halfplane_polygon([(a, b, c - 1) for a, b, c in G.halfplanes])
    return R, R.is_lattice


def outward_lattice_vertices(G: LatticePolygon) -> Optional[tuple]:
    """Vertices of the outward polygon when it is a lattice polygon, else None."""
    hps = [(a, b, c - 1) for a, b, c in G.halfplanes]
    cand = [_meet(hps[i - 1], hps[i]) for i in range(len(hps))]
    if all(_feasible(p, hps) for p in cand):
        pts = []
        for X, Y, D in cand:
            if X % D or Y % D:
                return None
            pts.append((X // D, Y // D))
        return tuple(convex_hull(pts))
    R = _halfplane_polygon(hps, cyclic_order=False)
    if not R.is_lattice:
        return None
    return tuple(convex_hull((int(x), int(y)) for x, y in R.vertices))


def max_polygon(P: LatticePolygon) -> LatticePolygon:
    G = interior_hull(P)
    if G.dim < Dim.TWO_D:
        raise UnsupportedCaseError("interior hull is not two-dimensional")
    R, ok = outward_polygon(G)
    if not ok:
        raise AssertionError("outward polygon of an interior hull is not lattice")
    return R.to_lattice()


# ---------------------------------------------------------------- named families

class Family(enum.Enum):
    SIGMA_MULTIPLE = "sigma"
    SQUARE_MULTIPLE = "square"
    UPSILON_MULTIPLE = "upsilon"
    GAMMA51_MULTIPLE = "gamma51"
    GAMMA52 = "gamma52"
    GAMMA53 = "gamma53"
    GAMMA7 = "gamma7"
    GAMMA8 = "gamma8"
    DELTA1 = "delta1"
    DELTA2 = "delta2"
    DELTA3 = "delta3"


TEMPLATES: dict[Family, tuple[Point, ...]] = {
    Family.SIGMA_MULTIPLE: ((0, 0), (1, 0), (0, 1)),
    Family.SQUARE_MULTIPLE: ((0, 0), (1, 0), (1, 1), (0, 1)),
    Family.UPSILON_MULTIPLE: ((-1, -1), (1, 0), (0, 1)),
    Family.GAMMA51_MULTIPLE: ((-1, 0), (0, -1), (1, 0), (0, 1)),
    Family.GAMMA52: ((-1, 0), (0, -1), (1, -1), (0, 1)),
    Family.GAMMA53: ((-1, -1), (1, -1), (0, 1)),
    Family.GAMMA7: ((-1, -1), (0, -1), (2, 0), (1, 1), (0, 1)),
    Family.GAMMA8: ((-1, -1), (0, -1), (3, 0), (1, 1), (0, 1)),
    Family.DELTA1: ((-2, 0), (6, -2), (0, 2), (-2, 3)),
    Family.DELTA2: ((-2, 1), (-1, 0), (3, -2), (4, -2), (1, 4)),
    Family.DELTA3: ((-2, -2), (4, 0), (4, 1), (1, 4)),
}

SCALABLE = {Family.SIGMA_MULTIPLE, Family.SQUARE_MULTIPLE, Family.UPSILON_MULTIPLE,
            Family.GAMMA51_MULTIPLE}


@dataclass(frozen=True)
class NamedFamily:
    family: Family
    d: int = 1

    def polygon(self) -> LatticePolygon:
        return named_polygon(self.family, self.d)

    def __str__(self):
        return f"{self.family.value}*{self.d}" if self.family in SCALABLE else self.family.value


@lru_cache(maxsize=None)
def named_polygon(family: Family, d: int = 1) -> LatticePolygon:
    if d < 1 or (d != 1 and family not in SCALABLE):
        raise DomainError(f"{family.value} has no scale {d}")
    return scale(hull(TEMPLATES[family]), d)


def recognize(P: LatticePolygon) -> Optional[NamedFamily]:
    if P.dim < Dim.TWO_D:
        return None
    n = len(P.vertices)
    for fam in Family:
        T = named_polygon(fam)
        if len(T.vertices) != n:
            continue
        d = 1
        if fam in SCALABLE:
            q, r = divmod(P.volume2, T.volume2)
            d = isqrt(q)
            if r or d * d != q:
                continue
        elif P.volume2 != T.volume2:
            continue
        if named_polygon(fam, d).canonical_vertices == P.canonical_vertices:
            return NamedFamily(fam, d)
    return None


def is_family(P: LatticePolygon, family: Family, d: Optional[int] = None) -> bool:
    r = recognize(P)
    return r is not None and r.family == family and (d is None or r.d == d)


# ---------------------------------------------------------------- divisors

@dataclass(frozen=True)
class TorusDivisor:
    """Rays v_l (primitive inward normals) with coefficients a_l.

    The associated polygon is the intersection of the half-planes
    <p, v_l> >= -a_l. Rays are plain primitive vectors, so v and -v may
    both occur.
    """

    rays: tuple[Point, ...]
    coeffs: tuple[int, ...]

    def __post_init__(self):
        rays = tuple((int(a), int(b)) for a, b in self.rays)
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "coeffs", coeffs)
        if len(rays) != len(coeffs):
            raise DomainError("rays and coefficients differ in length")
        if len(set(rays)) != len(rays):
            raise DomainError("rays must be pairwise distinct")
        for a, b in rays:
            if gcd(a, b) != 1:
                raise DomainError(f"ray ({a},{b}) is not primitive")


def _angle_cmp(u, v):
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


@dataclass(frozen=True)
class DivisorPolygon:
    polygon: RationalPolygon
    is_cartier: bool
    is_convex: bool
    is_strictly_convex: bool


def divisor_polygon(D: TorusDivisor) -> DivisorPolygon:
    order = sorted(range(len(D.rays)), key=cmp_to_key(lambda i, j: _angle_cmp(D.rays[i], D.rays[j])))
    rays = [D.rays[i] for i in order]
    coeffs = [D.coeffs[i] for i in order]
    n = len(rays)
    if n < 3 or any(rays[i - 1][0] * rays[i][1] - rays[i - 1][1] * rays[i][0] <= 0 for i in range(n)):
        raise DomainError("rays do not positively span the plane (unbounded polygon)")
    hps = [(a, b, -c) for (a, b), c in zip(rays, coeffs)]
    apexes = []
    for i in range(n):
        X, Y, d = _meet(hps[i - 1], hps[i])
        apexes.append((Fraction(X, d), Fraction(Y, d)))
    poly = _halfplane_polygon(hps, cyclic_order=False)
    verts = set(poly.vertices)
    cartier = all(x.denominator == 1 and y.denominator == 1 for x, y in apexes)
    convex = bool(verts) and all(p in verts for p in apexes)
    strictly = convex and len(set(apexes)) == n and len(verts) == n
    return DivisorPolygon(poly, cartier, convex, strictly)


# ---------------------------------------------------------------- text format

_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_points(text: str) -> list[Point]:
    """Parse ``(x,y),(x,y),...`` or a JSON array ``[[x,y],...]``."""
    s = text.strip()
    if s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise DomainError(f"malformed polygon JSON: {exc.msg}") from None
        if not isinstance(data, list) or not all(
                isinstance(p, list) and len(p) == 2 and all(type(c) is int for c in p) for p in data):
            raise DomainError("polygon JSON must be a list of [x, y] integer pairs")
        return [(p[0], p[1]) for p in data]
    pts = [(int(m.group(1)), int(m.group(2))) for m in _PAIR.finditer(s)]
    if _PAIR.sub("", s).replace(",", "").strip() or (s and not pts):
        raise DomainError(f"malformed polygon text: {text!r}")
    return pts


def parse_polygon(text: str) -> LatticePolygon:
    return hull(parse_points(text))


def format_polygon(P: LatticePolygon) -> str:
    return ",".join(f"({x},{y})" for x, y in P.vertices)


def polygon_json(P: LatticePolygon) -> list[list[int]]:
    return [[x, y] for x, y in P.vertices]
