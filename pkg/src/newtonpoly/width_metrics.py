"""Directional widths, width invariants, lattice width and lattice size."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import DomainError, UnsupportedCaseError
from .polygon_core import Dim, LatticeDirection, LatticePolygon, as_direction, interior_hull


@dataclass(frozen=True)
class WidthProfile:
    direction: LatticeDirection
    width: int
    offset: int
    invariants: tuple[int, ...]


def width(P: LatticePolygon, v) -> tuple[int, int]:
    """(width, offset) of P with respect to the functional aY - bX."""
    a, b = as_direction(v)
    if not P.vertices:
        return -1, 0
    vals = [a * y - b * x for x, y in P.vertices]
    lo = min(vals)
    return max(vals) - lo, lo


def width_invariants(P: LatticePolygon, v) -> WidthProfile:
    v = as_direction(v)
    w, m = width(P, v)
    if w < 2:
        raise UnsupportedCaseError(f"width {w} along {v} is below 2; no invariants")
    rows = [-1] * (w - 1)
    a, b = v
    for x, y in P.interior_points:
        rows[a * y - b * x - m - 1] += 1
    return WidthProfile(v, w, m, tuple(rows))


def _independent_edges(verts):
    n = len(verts)
    edges = [(verts[(i + 1) % n][0] - verts[i][0], verts[(i + 1) % n][1] - verts[i][1])
             for i in range(n)]
    best = None
    for i in range(n):
        for j in range(i + 1, n):
            c = abs(edges[i][0] * edges[j][1] - edges[i][1] * edges[j][0])
            if best is None or c > best[0]:
                best = (c, edges[i], edges[j])
    return best


def _ceil_div(p, q):
    return -(-p // q)


def directions_with_width_at_most(P: LatticePolygon, d: int) -> list[LatticeDirection]:
    """Every direction (canonical sign) with width(P, v) <= d, sorted by (b, a).

    A direction of width <= d pairs to at most d with any difference vector
    of P, so two independent edges confine (a, b) to a parallelogram.
    """
    if P.dim < Dim.TWO_D:
        raise UnsupportedCaseError("infinitely many directions for a degenerate polygon")
    if d < 0:
        return []
    D, s1, s2 = _independent_edges(P.vertices)
    A = d * (abs(s1[0]) + abs(s2[0])) // D
    B = d * (abs(s1[1]) + abs(s2[1])) // D
    verts = P.vertices
    out = []
    for a in range(-A, A + 1):
        lo, hi = 0, B
        for sx, sy in (s1, s2):
            t = a * sy
            if sx > 0:
                lo = max(lo, _ceil_div(t - d, sx))
                hi = min(hi, (t + d) // sx)
            elif sx < 0:
                lo = max(lo, _ceil_div(t + d, sx))
                hi = min(hi, (t - d) // sx)
            elif abs(t) > d:
                hi = -1
        for b in range(lo, hi + 1):
            if b == 0 and a <= 0:
                continue
            if gcd(a, b) != 1:
                continue
            vals = [a * y - b * x for x, y in verts]
            if max(vals) - min(vals) <= d:
                out.append(LatticeDirection(a, b))
    out.sort(key=LatticeDirection.sort_key)
    return out


@lru_cache(maxsize=100_000)
def _lw_data(P: LatticePolygon) -> tuple[int, tuple[LatticeDirection, ...]]:
    upper = min(width(P, v)[0] for v in ((1, 0), (0, 1), (1, 1), (1, -1)))
    found = [(width(P, v)[0], v) for v in directions_with_width_at_most(P, upper)]
    lw = min(w for w, _ in found)
    return lw, tuple(v for w, v in found if w == lw)


def lattice_width(P: LatticePolygon) -> int:
    if P.dim == Dim.EMPTY:
        return -1
    if P.dim < Dim.TWO_D:
        return 0
    return _lw_data(P)[0]


def lattice_width_directions(P: LatticePolygon) -> list[LatticeDirection]:
    if P.dim == Dim.SEGMENT:
        (x0, y0), (x1, y1) = P.vertices
        g = gcd(x1 - x0, y1 - y0)
        return [LatticeDirection.of((x1 - x0) // g, (y1 - y0) // g)]
    if P.dim < Dim.SEGMENT:
        raise UnsupportedCaseError("every direction (or none) attains the width here")
    return list(_lw_data(P)[1])


def lattice_size(P: LatticePolygon) -> int:
    """Least d such that an equivalent copy of P fits inside d times the standard simplex."""
    if P.dim == Dim.EMPTY:
        return -2
    if P.dim == Dim.POINT:
        return 0
    verts = P.vertices
    if P.dim == Dim.SEGMENT:
        (x0, y0), (x1, y1) = verts
        return gcd(x1 - x0, y1 - y0)

    def value(u, w):
        s = [(u[0] * x + u[1] * y, w[0] * x + w[1] * y) for x, y in verts]
        return max(p + q for p, q in s) - min(p for p, _ in s) - min(q for _, q in s)

    best = value((1, 0), (0, 1))
    # a functional of a dSigma placement has width <= d; v = (a, b) acts as (-b, a)
    funcs = []
    for v in directions_with_width_at_most(P, best):
        funcs.append(((-v.b, v.a), width(P, v)[0]))
        funcs.append(((v.b, -v.a), width(P, v)[0]))
    changed = True
    while changed:
        changed = False
        funcs = [(u, wu) for u, wu in funcs if wu <= best]
        for u, _ in funcs:
            for w, _ in funcs:
                if u[0] * w[1] - u[1] * w[0] == 1:
                    val = value(u, w)
                    if val < best:
                        best = val
                        changed = True
    return best


def provably_distinct_pencils(P: LatticePolygon, v1, v2) -> bool:
    """Sufficient criterion for g_v1 != g_v2: width of the interior hull along v1
    exceeds |det(v1, v2)| - 2."""
    v1, v2 = as_direction(v1), as_direction(v2)
    if v1 == v2:
        raise DomainError("the two directions coincide up to sign")
    det = abs(v1.a * v2.b - v1.b * v2.a)
    return width(interior_hull(P), v1)[0] > det - 2


_DIRECTION = re.compile(r"^\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*$")


def parse_direction(text: str) -> LatticeDirection:
    m = _DIRECTION.match(text)
    if not m:
        raise DomainError(f"malformed direction {text!r}; expected a,b")
    return LatticeDirection.of(int(m.group(1)), int(m.group(2)))
