"""Command-line front end.

Every command prints one JSON document (compact, fixed key order) and
exits 0. Domain errors exit 1 and unsupported cases exit 2, each with a
one-line message on stderr.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from contextlib import redirect_stdout
from fractions import Fraction

from . import curve_invariants as curves, enumeration, polygon_core as polygon, width_metrics as width
from .errors import ConsistencyError, DomainError, UnsupportedCaseError

TIERS = ("fast", "full", "extreme")
FAST_MAX_GENUS = 10


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise DomainError(message)


def _dump(obj, pretty: bool = False) -> str:
    if pretty:
        return _table(obj)
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _table(obj, indent: str = "") -> str:
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, str)) for x in v):
                lines.append(f"{indent}{k}:")
                lines.append(_table(v, indent + "  "))
            else:
                lines.append(f"{indent}{k:<20} {json.dumps(v)}")
    elif isinstance(obj, list):
        for item in obj:
            lines.append(_table(item, indent + "- ") if isinstance(item, dict) else f"{indent}{json.dumps(item)}")
    return "\n".join(lines)


def _dir(v) -> list[int]:
    return [v.a, v.b]


def _rat(q: Fraction):
    return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _poly(text: str) -> polygon.LatticePolygon:
    return polygon.parse_polygon(text)


def _pencil_block(pd: curves.PencilData) -> dict:
    return {"direction": _dir(pd.direction), "degree": pd.degree, "scrollar": list(pd.scrollar),
            "complete": pd.complete, "rank": pd.rank, "scroll_dim": pd.scroll_dim}


def _pencil_count(pc: curves.PencilCount) -> dict:
    return {"kind": pc.kind.value, "n": pc.n, "directions": [_dir(v) for v in pc.directions]}


def cmd_profile(a):
    p = curves.curve_profile(_poly(a.polygon))
    return {
        "genus": p.genus,
        "gonality": p.gonality,
        "lw": p.lw,
        "ls_interior": p.ls_interior,
        "pencils": _pencil_count(p.gonality_pencils),
        "clifford": None if p.clifford_index is None else
        {"index": p.clifford_index, "dimension": p.clifford_dimension},
        "smooth_plane": p.smooth_plane,
        "near_gonal": p.near_gonal.value,
        "pencil_data": [_pencil_block(b) for b in p.pencils],
    }


def cmd_hull(a):
    P = _poly(a.polygon)
    lat, bd, inner = polygon.counts(P)
    return {"dim": P.dim.name.lower(), "vertices": polygon.polygon_json(P), "lattice": lat,
            "boundary": bd, "interior": inner, "volume2": P.volume2,
            "canonical": polygon.polygon_json(polygon.canonical_form(P)),
            "interior_hull": polygon.polygon_json(polygon.interior_hull(P))}


def cmd_max(a):
    return {"polygon": polygon.polygon_json(polygon.max_polygon(_poly(a.polygon)))}


def cmd_equiv(a):
    return {"equivalent": polygon.are_equivalent(_poly(a.first), _poly(a.second))}


def cmd_recognize(a):
    fam = polygon.recognize(_poly(a.polygon))
    if fam is None:
        return {"family": None, "d": None}
    return {"family": fam.family.value, "d": fam.d}


def cmd_width(a):
    P = _poly(a.polygon)
    v = width.parse_direction(a.direction)
    w, m = width.width(P, v)
    inv = list(width.width_invariants(P, v).invariants) if w >= 2 else []
    return {"direction": _dir(v), "width": w, "offset": m, "invariants": inv}


def cmd_lw(a):
    P = _poly(a.polygon)
    lw = width.lattice_width(P)
    dirs = width.lattice_width_directions(P) if P.dim >= polygon.Dim.SEGMENT else []
    return {"lw": lw, "directions": [_dir(v) for v in dirs]}


def cmd_size(a):
    return {"ls": width.lattice_size(_poly(a.polygon))}


def cmd_scrollar(a):
    pd = curves.pencil_data(_poly(a.polygon), width.parse_direction(a.direction))
    return {"scrollar": list(pd.scrollar), "complete": pd.complete, "rank": pd.rank}


def cmd_pencils(a):
    return _pencil_count(curves.gonality_pencils(_poly(a.polygon)))


def cmd_clifford(a):
    ci, cd = curves.clifford(_poly(a.polygon))
    return {"index": ci, "dimension": cd}


def cmd_neargonal(a):
    return {"near_gonal": curves.near_gonal(_poly(a.polygon)).value}


def cmd_divisor(a):
    rays = polygon.parse_points(a.rays)
    try:
        coeffs = [int(c) for c in a.coeffs.split(",")]
    except ValueError:
        raise DomainError(f"malformed coefficient list {a.coeffs!r}") from None
    res = polygon.divisor_polygon(polygon.TorusDivisor(tuple(rays), tuple(coeffs)))
    return {"vertices": [[_rat(x), _rat(y)] for x, y in res.polygon.vertices],
            "is_lattice": res.polygon.is_lattice, "is_cartier": res.is_cartier,
            "is_convex": res.is_convex, "is_strictly_convex": res.is_strictly_convex}


def cmd_cab(a):
    r = curves.cab_profile(a.a, a.b)
    return {"polygon": polygon.polygon_json(r.polygon), "genus": r.genus, "gonality": r.gonality}


def cmd_hirzebruch(a):
    r = curves.hirzebruch_profile(a.n, a.a, a.d)
    return {"polygon": polygon.polygon_json(r.polygon), "genus": r.genus, "gonality": r.gonality,
            "pencil_degree": r.pencil_degree, "invariants": list(r.invariants),
            "scrollar": list(r.scrollar), "recovered_n": r.recovered_n}


def _progress(msg: str):
    print(msg, file=sys.stderr, flush=True)


def cmd_enumerate(a):
    tier = a.tier
    if a.genus is None and a.points is None:
        raise DomainError("enumerate needs --genus or --points")
    size = a.genus if a.genus is not None else a.points
    if a.mode != "points" and a.genus is None:
        raise DomainError(f"--mode {a.mode} needs --genus")
    if a.mode != "points" and size > FAST_MAX_GENUS and tier != "extreme":
        raise DomainError(f"genus {size} needs --tier extreme (fast/full stop at genus {FAST_MAX_GENUS})")
    threads = a.threads or enumeration.default_threads()
    progress = _progress if a.verbose else None
    if a.mode == "points":
        recs = enumeration.enumerate_with_point_count(size, a.max_lw)
    elif a.mode == "interior":
        recs = enumeration.enumerate_interior_hulls(size, a.max_lw)
    elif a.mode == "maximal":
        recs = enumeration.enumerate_maximal(size)
    else:
        return _enumerate_genus(a, size, threads, progress)
    if a.count_only:
        return {"mode": a.mode, "size": size, "count": len(recs)}
    return _emit(a, [r.to_json() for r in recs])


def _emit(a, rows):
    text = "".join(_dump(r) + "\n" for r in rows)
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
        return {"mode": a.mode, "count": len(rows), "out": a.out}
    sys.stdout.write(text)
    return None


def _enumerate_genus(a, g, threads, progress):
    out = a.resume or a.out
    if out is None:
        keys = enumeration.enumerate_genus_classes(g, threads, progress)
        if a.count_only:
            return {"mode": "genus", "size": g, "count": len(keys)}
        return _emit(a, [enumeration.make_record(polygon.hull(k)).to_json() for k in keys])
    side = out + ".progress"
    done = set()
    if a.resume and os.path.exists(side):
        with open(side) as fh:
            done = {line.rstrip("\n") for line in fh if line.strip()}
    elif os.path.exists(out):
        os.remove(out)
        if os.path.exists(side):
            os.remove(side)

    def on_unit(name, keys):
        with open(out, "a") as fh:
            for k in keys:
                rec = {"canonical": [list(p) for p in k]} if a.count_only else \
                    enumeration.make_record(polygon.hull(k)).to_json()
                fh.write(_dump(rec) + "\n")
        with open(side, "a") as fh:
            fh.write(name + "\n")

    enumeration.enumerate_genus_classes(g, threads, progress, skip=done, on_unit=on_unit)
    with open(out) as fh:
        lines = fh.readlines()
    lines.sort(key=lambda s: tuple(map(tuple, json.loads(s)["canonical"])))
    with open(out, "w") as fh:
        fh.writelines(lines)
    return {"mode": "genus", "size": g, "count": len(lines), "out": out}


def cmd_verify_bounds(a):
    threads = a.threads or enumeration.default_threads()
    progress = _progress if a.verbose else None
    if a.table == "gonal":
        max_lw = a.max_lw or 6
        rep = enumeration.verify_gonality_bounds(max_lw, a.slack, not a.no_filter, threads, progress)
    else:
        max_lw = a.max_lw or (8 if a.tier != "fast" else 6)
        if max_lw > 6 and a.tier == "fast":
            raise DomainError("near-gonal rows lw = 7, 8 need --tier full")
        rep = enumeration.verify_neargonal_bounds(max_lw, a.slack, not a.no_filter, threads, progress)
    return {
        "table": rep.table.value,
        "rows": [{"lw": r.lw, "min_volume2": r.min_volume2, "expected": r.expected,
                  "cutoff_genus": r.cutoff_genus,
                  "witness": None if r.witness is None else polygon.polygon_json(r.witness)}
                 for r in rep.rows],
        "exceptions_found": [{"family": fam.family.value, "lw": lw, "volume2": v2}
                             for fam, lw, v2 in rep.exceptions_found],
        "passed": rep.passed,
    }


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="newtonpoly", description="Curve invariants from Newton polygons.")
    p.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def poly_cmd(name, fn, help_, direction=False):
        s = sub.add_parser(name, help=help_)
        s.add_argument("polygon", help='"(x,y),(x,y),..." or "[[x,y],...]"')
        if direction:
            s.add_argument("--direction", required=True, help="a,b")
        s.set_defaults(fn=fn)
        return s

    poly_cmd("profile", cmd_profile, "all curve invariants")
    poly_cmd("hull", cmd_hull, "hull, counts, canonical form")
    poly_cmd("max", cmd_max, "maximal polygon with the same interior hull")
    s = sub.add_parser("equiv", help="unimodular equivalence test")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(fn=cmd_equiv)
    poly_cmd("recognize", cmd_recognize, "named family, if any")
    poly_cmd("width", cmd_width, "width and width invariants", direction=True)
    poly_cmd("lw", cmd_lw, "lattice width and its directions")
    poly_cmd("size", cmd_size, "lattice size")
    poly_cmd("scrollar", cmd_scrollar, "scrollar invariants of a pencil", direction=True)
    poly_cmd("pencils", cmd_pencils, "number of gonality pencils")
    poly_cmd("clifford", cmd_clifford, "Clifford index and dimension")
    poly_cmd("neargonal", cmd_neargonal, "near-gonal pencil classification")
    s = sub.add_parser("divisor", help="polygon of a torus-invariant divisor")
    s.add_argument("--rays", required=True, help='"(a,b),(c,d),..."')
    s.add_argument("--coeffs", required=True, help="comma separated integers")
    s.set_defaults(fn=cmd_divisor)
    s = sub.add_parser("cab", help="C_{a,b} triangle")
    s.add_argument("a", type=int)
    s.add_argument("b", type=int)
    s.set_defaults(fn=cmd_cab)
    s = sub.add_parser("hirzebruch", help="trapezoid on a Hirzebruch surface")
    s.add_argument("n", type=int)
    s.add_argument("a", type=int)
    s.add_argument("d", type=int)
    s.set_defaults(fn=cmd_hirzebruch)

    def long_opts(s):
        s.add_argument("--tier", choices=TIERS, default="fast")
        s.add_argument("--threads", type=int, default=0, help="worker processes (default: all cores)")
        s.add_argument("--verbose", action="store_true", help="progress on stderr")

    s = sub.add_parser("enumerate", help="enumerate polygon classes (NDJSON)")
    s.add_argument("--genus", type=int)
    s.add_argument("--points", type=int)
    s.add_argument("--mode", choices=("genus", "points", "interior", "maximal"), default=None)
    s.add_argument("--max-lw", type=int, default=None)
    s.add_argument("--out")
    s.add_argument("--resume", help="continue an interrupted --out FILE run")
    s.add_argument("--count-only", action="store_true")
    long_opts(s)
    s.set_defaults(fn=cmd_enumerate)
    s = sub.add_parser("verify-bounds", help="recompute the volume bound tables")
    s.add_argument("--table", choices=("gonal", "neargonal"), required=True)
    s.add_argument("--max-lw", type=int, default=None)
    s.add_argument("--slack", type=int, default=0, help="raise the volume cutoff (saturation check)")
    s.add_argument("--no-filter", action="store_true", help="keep excluded hulls (negative control)")
    long_opts(s)
    s.set_defaults(fn=cmd_verify_bounds)
    return p


def _run(argv) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "enumerate" and args.mode is None:
            args.mode = "points" if args.points is not None and args.genus is None else "genus"
        if getattr(args, "threads", 0) < 0:
            raise DomainError("--threads must be positive")
        result = args.fn(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except UnsupportedCaseError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"internal consistency check failed: {exc}", file=sys.stderr)
        return 2
    if result is not None:
        print(_dump(result, args.pretty))
    return 0


def run(argv: list[str]) -> tuple[int, bytes]:
    """Run one command, returning (exit code, captured stdout)."""
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = _run(argv)
    return code, buf.getvalue().encode()


def main(argv=None) -> int:
    return _run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
