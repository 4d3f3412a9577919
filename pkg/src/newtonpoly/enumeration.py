"""Enumeration of lattice polygons up to unimodular equivalence.

Three routes are provided:

* growth by lattice-point count (every k-point polygon is the hull of a
  (k-1)-point polygon Q and one lattice point of the outward polygon of Q);
* interior polygons, i.e. polygons G whose outward polygon is lattice,
  built recursively by genus;
* all polygons of a given genus: for a two-dimensional interior hull G the
  maximal polygon G^(-1) is clipped vertex by vertex, and the collinear
  (hyperelliptic) case is a finite strip enumeration.
"""

from __future__ import annotations

import enum
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Iterator, Optional

from .curve_invariants import satisfies_plane_condition
from .errors import DomainError
from .polygon_core import (Dim, Family, LatticePolygon, NamedFamily, _canonical_vertices,
                           _halfplane_polygon, _make, convex_hull, interior_hull,
                           named_polygon, outward_lattice_vertices, polygon_json, recognize)
from .width_metrics import lattice_width

Verts = tuple


@dataclass(frozen=True)
class EnumerationRecord:
    canonical: LatticePolygon
    genus: int
    lattice_points: int
    lw: int
    volume2: int
    is_maximal: bool
    is_interior_hull_2d: bool

    def to_json(self) -> dict:
        return {
            "canonical": polygon_json(self.canonical),
            "genus": self.genus,
            "lattice_points": self.lattice_points,
            "lw": self.lw,
            "volume2": self.volume2,
            "is_maximal": self.is_maximal,
            "is_interior_hull_2d": self.is_interior_hull_2d,
        }


def make_record(P: LatticePolygon) -> EnumerationRecord:
    C = _make(_canonical_vertices(P.vertices))
    H = interior_hull(C)
    maximal = False
    if H.dim == Dim.TWO_D:
        M = outward_lattice_vertices(H)
        maximal = M is not None and _make(M).lattice_count == C.lattice_count
    return EnumerationRecord(C, C.interior_count, C.lattice_count, lattice_width(C),
                             C.volume2, maximal, H.dim == Dim.TWO_D)


# ---------------------------------------------------------------- primitives

def _pick(verts: Verts) -> tuple[int, int, int]:
    """(volume2, boundary, interior) of a 2D vertex tuple."""
    n = len(verts)
    s = b = 0
    for i in range(n):
        x0, y0 = verts[i - 1]
        x1, y1 = verts[i]
        s += x0 * y1 - x1 * y0
        b += gcd(x1 - x0, y1 - y0)
    return s, b, (s - b + 2) // 2


def _triangle_points(a, b, c) -> list:
    xs = (a[0], b[0], c[0])
    ys = (a[1], b[1], c[1])
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            p = (x, y)
            if ((b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]) >= 0
                    and (c[0] - b[0]) * (y - b[1]) - (c[1] - b[1]) * (x - b[0]) >= 0
                    and (a[0] - c[0]) * (y - c[1]) - (a[1] - c[1]) * (x - c[0]) >= 0):
                out.append(p)
    return out


def _children(verts: Verts) -> Iterator[Verts]:
    """Hulls obtained by deleting one vertex (and nothing else)."""
    n = len(verts)
    for i in range(n):
        a, v, c = verts[i - 1], verts[i], verts[(i + 1) % n]
        pts = [p for p in _triangle_points(a, v, c) if p != v]
        yield tuple(convex_hull(list(verts[i + 1:]) + list(verts[:i]) + pts))


def _clip_classes(top: Verts, h: int, min_points: int = 0) -> Iterator[tuple[Verts, Verts, int]]:
    """Classes of polygons D inside ``top`` with exactly h interior points.

    ``top`` must be the outward polygon of an interior polygon with h points;
    every such D then has that interior hull. Yields (canonical, placement,
    lattice count), level by level from the top down. Levels with fewer than
    ``min_points`` lattice points are not generated.
    """
    level = {_canonical_vertices(top): top}
    count = _pick(top)[1] + h
    while level:
        for key, verts in level.items():
            yield key, verts, count
        count -= 1
        if count < max(min_points, h + 3):
            return
        nxt: dict = {}
        seen: set = set()
        for verts in level.values():
            for ch in _children(verts):
                if len(ch) < 3 or ch in seen:
                    continue
                seen.add(ch)
                if _pick(ch)[2] != h:
                    continue
                key = _canonical_vertices(ch)
                if key not in nxt:
                    nxt[key] = ch
        level = nxt


def _strip_classes(h: int) -> dict[Verts, Verts]:
    """Genus-h polygons (h >= 1) whose interior points are collinear.

    Normal form: strip 0 <= y <= 2, interior points (1,1)..(h,1), bottom
    row [0, b0], top row [a2, b2], optional middle vertices (0,1), (h+1,1).
    The extra class 3*Sigma for h = 1 is added as well.
    """
    top = 2 * h + 2
    out: dict = {}
    for b0 in range(top + 1):
        for a2 in range(top + 1):
            for b2 in range(a2, top - b0 + 1):
                for left in (False, True):
                    if (not left and a2 > 1) or (left and a2 == 0):
                        continue
                    for right in (False, True):
                        s = b0 + b2
                        if (not right and s < 2 * h + 1) or (right and s == top):
                            continue
                        pts = [(0, 0), (b0, 0), (a2, 2), (b2, 2)]
                        if left:
                            pts.append((0, 1))
                        if right:
                            pts.append((h + 1, 1))
                        verts = tuple(convex_hull(pts))
                        if _pick(verts)[2] != h:
                            raise AssertionError("strip normal form produced a wrong genus")
                        out.setdefault(_canonical_vertices(verts), verts)
    if h == 1:
        t = ((0, 0), (3, 0), (0, 3))
        out.setdefault(_canonical_vertices(t), t)
    return out


def _genus_zero_classes(k: int) -> list[Verts]:
    """Two-dimensional polygons without interior points and with k lattice points."""
    out = []
    for a in range(1, k):
        b = k - 2 - a
        if 0 <= b <= a:
            out.append(tuple(convex_hull([(0, 0), (a, 0), (0, 1), (b, 1)])))
    if k == 6:
        out.append(((0, 0), (2, 0), (0, 2)))
    return out


# ---------------------------------------------------------------- point-count growth

def _outward_points(verts: Verts) -> list:
    P = _make(verts)
    hps = [(a, b, c - 1) for a, b, c in P.halfplanes]
    ys = [y for _, y in _halfplane_polygon(hps).vertices]
    pts = []
    for y in range(math.floor(min(ys)), math.ceil(max(ys)) + 1):
        lo = hi = None
        ok = True
        for nx, ny, c in hps:
            r = c - ny * y
            if nx > 0:
                t = -(-r // nx)
                lo = t if lo is None else max(lo, t)
            elif nx < 0:
                t = (-r) // (-nx)
                hi = t if hi is None else min(hi, t)
            elif r > 0:
                ok = False
        if ok and lo is not None and hi is not None:
            pts.extend((x, y) for x in range(lo, hi + 1))
    return pts


def point_count_classes(k: int, max_lw: Optional[int] = None) -> dict[Verts, Verts]:
    """Classes of 2D polygons with exactly k lattice points (and lw <= max_lw)."""
    if k < 3:
        raise DomainError("a two-dimensional lattice polygon has at least 3 points")
    sigma = ((0, 0), (1, 0), (0, 1))
    level = {sigma: sigma}
    for c in range(4, k + 1):
        nxt: dict = {}
        for verts in level.values():
            P = _make(verts)
            inside = set(P.lattice_points())
            for p in _outward_points(verts):
                if p in inside:
                    continue
                ch = tuple(convex_hull(list(verts) + [p]))
                vol2, b, i = _pick(ch)
                if b + i != c:
                    continue
                key = _canonical_vertices(ch)
                if key in nxt:
                    continue
                if max_lw is not None and lattice_width(_make(ch)) > max_lw:
                    continue
                nxt[key] = ch
        level = nxt
    return level


def enumerate_with_point_count(k: int, max_lw: Optional[int] = None) -> list[EnumerationRecord]:
    return sorted((make_record(_make(v)) for v in point_count_classes(k, max_lw).values()),
                  key=lambda r: r.canonical.vertices)


# ---------------------------------------------------------------- interior polygons

_IP_CACHE: dict = {}


def _ip_candidate(verts: Verts, max_lw: Optional[int]) -> bool:
    if outward_lattice_vertices(_make(verts)) is None:
        return False
    return max_lw is None or lattice_width(_make(verts)) <= max_lw


def _clip_worker(args):
    verts, h, G, max_lw = args
    top = outward_lattice_vertices(_make(verts))
    found = []
    for key, placed, count in _clip_classes(top, h):
        if count <= G and _ip_candidate(placed, max_lw):
            found.append((count, key))
    return found


def _map(fn, items, threads: int):
    items = list(items)
    if threads > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * threads))))
    return [fn(x) for x in items]


def interior_polygons_upto(G: int, max_lw: Optional[int] = None, threads: int = 1,
                           progress: Optional[Callable[[str], None]] = None) -> dict[int, list[Verts]]:
    """All interior polygons with g lattice points, 3 <= g <= G, keyed by g.

    Each list holds canonical vertex tuples, sorted. ``max_lw`` restricts
    to lattice width at most max_lw, which lets the recursion use only
    parents of lattice width at most max_lw - 2.
    """
    if max_lw is not None and max_lw >= G:
        max_lw = None
    key = (G, max_lw)
    if key in _IP_CACHE:
        return _IP_CACHE[key]
    found: dict[int, set] = {g: set() for g in range(3, G + 1)}

    def offer(verts, count):
        if 3 <= count <= G and _ip_candidate(verts, max_lw):
            found[count].add(_canonical_vertices(verts))

    for g in range(3, G + 1):
        for verts in _genus_zero_classes(g):
            offer(verts, g)
    for h in range(1, G - 2):
        for verts in _strip_classes(h).values():
            count = _pick(verts)[1] + h
            if count <= G:
                offer(verts, count)

    if max_lw is None:
        # parents come from the same sweep, processed by increasing genus
        for h in range(3, G - 2):
            jobs = [(v, h, G, None) for v in sorted(found[h])]
            for res in _map(_clip_worker, jobs, threads):
                for count, k in res:
                    if count > h:
                        found[count].add(k)
            if progress:
                progress(f"interior polygons: parents of genus {h} done ({len(jobs)})")
    elif max_lw >= 3:
        parents = interior_polygons_upto(G - 3, max_lw - 2, threads, progress)
        jobs = [(v, h, G, max_lw) for h in sorted(parents) for v in parents[h]]
        for res in _map(_clip_worker, jobs, threads):
            for count, k in res:
                found[count].add(k)
    out = {g: sorted(s) for g, s in found.items()}
    _IP_CACHE[key] = out
    return out


def enumerate_interior_hulls(g: int, max_lw: Optional[int] = None) -> list[EnumerationRecord]:
    if g < 3:
        raise DomainError("interior polygons with a 2D hull need g >= 3")
    return [make_record(_make(v)) for v in interior_polygons_upto(g, max_lw)[g]]


def enumerate_maximal(g: int) -> list[EnumerationRecord]:
    if g < 3:
        raise DomainError("maximal polygons need g >= 3")
    recs = [make_record(_make(outward_lattice_vertices(_make(v))))
            for v in interior_polygons_upto(g)[g]]
    return sorted(recs, key=lambda r: r.canonical.vertices)


# ---------------------------------------------------------------- by genus

def _genus_unit_worker(args) -> list[Verts]:
    verts, g = args
    top = outward_lattice_vertices(_make(verts))
    return [key for key, _, _ in _clip_classes(top, g)]


def genus_units(g: int, threads: int = 1, progress=None) -> list[tuple[str, object]]:
    """Independent work units for enumerate_by_genus: the strip unit and one per hull."""
    if g < 1:
        raise DomainError("genus 0 polygons form an infinite family")
    units: list = [("strip", None)]
    if g >= 3:
        units += [(json.dumps([list(p) for p in v], separators=(",", ":")), v)
                  for v in interior_polygons_upto(g, threads=threads, progress=progress)[g]]
    return units


def run_unit(g: int, unit) -> list[Verts]:
    name, verts = unit
    if name == "strip":
        return sorted(_strip_classes(g)) if g >= 1 else []
    return sorted(_genus_unit_worker((verts, g)))


def _run_unit_args(args):
    return run_unit(*args)


def enumerate_genus_classes(g: int, threads: int = 1, progress=None,
                            skip: Iterable[str] = (),
                            on_unit: Optional[Callable[[str, list], None]] = None) -> list[Verts]:
    """Canonical vertex tuples of all genus-g classes, sorted."""
    units = genus_units(g, threads, progress)
    skip = set(skip)
    todo = [u for u in units if u[0] not in skip]
    out: list = []
    if threads > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = ex.map(_run_unit_args, [(g, u) for u in todo], chunksize=4)
            for u, res in zip(todo, results):
                if on_unit:
                    on_unit(u[0], res)
                out.extend(res)
    else:
        for u in todo:
            res = run_unit(g, u)
            if on_unit:
                on_unit(u[0], res)
            out.extend(res)
    out.sort()
    return out


def enumerate_by_genus(g: int, threads: int = 1) -> list[EnumerationRecord]:
    return [make_record(_make(v)) for v in enumerate_genus_classes(g, threads)]


# ---------------------------------------------------------------- bound tables

class Table(enum.Enum):
    GONAL = "gonal"
    NEARGONAL = "neargonal"


GONAL_BOUNDS = {3: 18, 4: 20, 5: 25, 6: 28}
NEARGONAL_BOUNDS = {3: 24, 4: 24, 5: 30, 6: 34, 7: 46, 8: 55}


@dataclass(frozen=True)
class BoundRow:
    lw: int
    min_volume2: Optional[int]
    witness: Optional[LatticePolygon]
    expected: int
    cutoff_genus: int


@dataclass(frozen=True)
class BoundReport:
    table: Table
    rows: tuple[BoundRow, ...]
    exceptions_found: tuple[tuple[NamedFamily, int, int], ...]

    @property
    def passed(self) -> bool:
        return all(r.min_volume2 == r.expected for r in self.rows)


def in_gonal_exception_list(G: LatticePolygon) -> bool:
    """Hulls excluded from the gonality bound: (d-3)Sigma, Upsilon, 2Upsilon, Gamma5_i."""
    if G.dim == Dim.POINT:
        return True
    fam = recognize(G)
    if fam is None:
        return False
    f, d = fam.family, fam.d
    return (f == Family.SIGMA_MULTIPLE or (f == Family.UPSILON_MULTIPLE and d <= 2)
            or (f == Family.GAMMA51_MULTIPLE and d == 1) or f in (Family.GAMMA52, Family.GAMMA53))


def in_neargonal_exception_list(G: LatticePolygon) -> bool:
    if in_gonal_exception_list(G):
        return True
    fam = recognize(G)
    if fam is not None and ((fam.family == Family.UPSILON_MULTIPLE and fam.d <= 3)
                            or fam.family in (Family.GAMMA7, Family.GAMMA8)):
        return True
    return not satisfies_plane_condition(G)


_SUB_BOUND = (Family.DELTA1, Family.DELTA2, Family.DELTA3)


def _bound_table(table: Table, bounds: dict, max_lw: int, slack: int, filter_exceptions: bool,
                 threads: int, progress) -> BoundReport:
    excluded = in_gonal_exception_list if table == Table.GONAL else in_neargonal_exception_list
    rows = []
    exceptions = []
    for L in range(3, max_lw + 1):
        cutoff = bounds[L] + slack
        G = (cutoff - 1) // 2
        ips = interior_polygons_upto(G, L - 2, threads, progress)
        best = None
        for g in range(3, G + 1):
            for verts in ips[g]:
                gamma = _make(verts)
                if filter_exceptions and excluded(gamma):
                    continue
                M = _make(outward_lattice_vertices(gamma))
                if M.volume2 > cutoff or lattice_width(M) != L:
                    continue
                if table == Table.NEARGONAL and filter_exceptions and M.volume2 < bounds[L]:
                    fam = recognize(M)
                    if fam is not None and fam.family in _SUB_BOUND:
                        exceptions.append((fam, L, M.volume2))
                        continue
                cand = (M.volume2, _canonical_vertices(M.vertices))
                if best is None or cand < best:
                    best = cand
        if best is None:
            rows.append(BoundRow(L, None, None, bounds[L], G))
        else:
            rows.append(BoundRow(L, best[0], _make(best[1]), bounds[L], G))
        if progress:
            progress(f"{table.value} lw={L}: min volume2 {rows[-1].min_volume2}")
    exceptions.sort(key=lambda e: (e[1], e[2], e[0].family.value))
    return BoundReport(table, tuple(rows), tuple(exceptions))


def verify_gonality_bounds(max_lw: int = 6, slack: int = 0, filter_exceptions: bool = True,
                           threads: int = 1, progress=None) -> BoundReport:
    if not 3 <= max_lw <= 6:
        raise DomainError("max_lw must lie in 3..6 for the gonality table")
    return _bound_table(Table.GONAL, GONAL_BOUNDS, max_lw, slack, filter_exceptions, threads, progress)


def verify_neargonal_bounds(max_lw: int = 6, slack: int = 0, filter_exceptions: bool = True,
                            threads: int = 1, progress=None) -> BoundReport:
    if not 3 <= max_lw <= 8:
        raise DomainError("max_lw must lie in 3..8 for the near-gonal table")
    return _bound_table(Table.NEARGONAL, NEARGONAL_BOUNDS, max_lw, slack, filter_exceptions,
                        threads, progress)


def default_threads() -> int:
    return os.cpu_count() or 1
