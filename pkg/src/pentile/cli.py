"""Command-line interface: ``pentile <command> ...``.

Exit codes: 0 success, 1 validation failure or negative answer, 2 usage
error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, io
from .generators import (DISK_KINDS, GeneratorError, connected_sum, disk_fixture,
                         dodecahedron, earth_map, three_v4_example)
from .iso import canonical_code, face_rooted_code
from .maps import (DiskMap, MapError, check_counting_identities, degree_histogram,
                   distance_matrix, high_degree_vertices, validate_disk,
                   validate_pentagonal)
from .naive import enumerate_sphere_naive
from .search import BudgetExceeded, DiskConstraints, enumerate_disk, enumerate_sphere

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return io.loads(text)
    except OSError as exc:
        raise _Fail(EXIT_USAGE, f"cannot read {path}: {exc}")
    except (ValueError, KeyError, TypeError, MapError) as exc:
        raise _Fail(EXIT_INVALID, f"{path}: not a valid map file: {exc}")


def _emit(args, obj, metadata=None) -> None:
    if not args.raw:
        obj = io.canonical_form(obj)
    text = io.dumps(obj, metadata)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sphere(obj):
    return obj.map if isinstance(obj, DiskMap) else obj


# -- commands -----------------------------------------------------------------

def cmd_generate(args) -> int:
    try:
        if args.kind == "dodecahedron":
            obj, meta = dodecahedron(), {"kind": "dodecahedron"}
        elif args.kind == "earthmap":
            if args.distance is None or args.timezones is None:
                raise _Fail(EXIT_USAGE, "earthmap needs --distance and --timezones")
            obj = earth_map(args.distance, args.timezones)
            meta = {"kind": "earthmap", "distance": args.distance,
                    "timezones": args.timezones}
        elif args.kind == "three-v4":
            obj, meta = three_v4_example(), {"kind": "three-v4"}
        else:
            if args.name not in DISK_KINDS:
                raise _Fail(EXIT_USAGE, f"disk kind must be one of {', '.join(DISK_KINDS)}")
            obj, meta = disk_fixture(args.name), {"kind": f"disk {args.name}"}
    except GeneratorError as exc:
        raise _Fail(EXIT_USAGE, str(exc))
    _emit(args, obj, meta)
    return EXIT_OK


def cmd_verify(args) -> int:
    obj = _read(args.file)
    if isinstance(obj, DiskMap):
        rep = validate_disk(obj)
        identities = None
    else:
        rep = validate_pentagonal(obj)
        identities = rep.is_valid and check_counting_identities(obj)
    ok = rep.is_valid and identities is not False
    if args.json:
        print(json.dumps({"valid": ok, "violations": [list(v) for v in rep.violations],
                          "identities": identities}))
    else:
        for rule, where in rep.violations:
            print(f"violation {rule} at {where}")
        if identities is False:
            print("counting identities fail")
        print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_INVALID


def _count_table(counts: dict[int, int]) -> str:
    rows = ["F\tcount"] + [f"{f}\t{n}" for f, n in sorted(counts.items())]
    return "\n".join(rows)


def cmd_enumerate(args) -> int:
    sink_fh = open(args.output, "wb") if args.output else None
    found = []

    def sink(obj):
        found.append(obj)

    try:
        if args.disk:
            if args.boundary is None:
                raise _Fail(EXIT_USAGE, "--disk needs --boundary")
            c = DiskConstraints(args.boundary, args.max_high_boundary,
                                not args.interior_any, args.max_faces)
            report = enumerate_disk(c, sink, workers=args.workers, max_nodes=args.max_nodes)
        elif args.naive:
            report = enumerate_sphere_naive(args.max_faces)
        else:
            report = enumerate_sphere(args.max_faces, sink, workers=args.workers,
                                      max_nodes=args.max_nodes)
    except BudgetExceeded as exc:
        counts = exc.report.counts if exc.report else {}
        msg = {"complete": False, "reason": str(exc), "counts": counts}
        print(json.dumps(msg) if args.json else
              f"budget exceeded ({exc}); partial counts, not authoritative:\n" + _count_table(counts))
        return EXIT_BUDGET
    except ValueError as exc:
        raise _Fail(EXIT_USAGE, str(exc))
    finally:
        if sink_fh is not None:
            io.write_planar_code([io.canonical_form(_sphere(o)) for o in found], sink_fh)
            sink_fh.close()
    if args.json:
        print(json.dumps({"complete": True, "counts": {str(k): v for k, v in report.counts.items()},
                          "nodes": report.nodes,
                          "corpus": [c.hex() for c in report.corpus]}))
    else:
        print(_count_table(report.counts))
    return EXIT_OK


def cmd_isom(args) -> int:
    a, b = _read(args.a), _read(args.b)
    refl = not args.chiral
    if isinstance(a, DiskMap) and isinstance(b, DiskMap):
        same = face_rooted_code(a.map, a.outer, refl) == face_rooted_code(b.map, b.outer, refl)
    else:
        sa, sb = _sphere(a), _sphere(b)
        same = canonical_code(sa, refl) == canonical_code(sb, refl)
    if args.json:
        print(json.dumps({"isomorphic": same}))
    else:
        print("isomorphic" if same else "not isomorphic")
    return EXIT_OK if same else EXIT_INVALID


def cmd_classify(args) -> int:
    m = _sphere(_read(args.file))
    if not validate_pentagonal(m):
        raise _Fail(EXIT_INVALID, "not a valid pentagonal tiling")
    try:
        tag = analysis.classify_two_pole(m)
    except analysis.ClassificationFailed as exc:
        raise _Fail(EXIT_INVALID, f"classification failed: {exc}")
    if args.json:
        if isinstance(tag, analysis.NotEarthMap):
            print(json.dumps({"earth_map": False, "high_degree": tag.high_degree_count}))
        else:
            print(json.dumps({"earth_map": True, "distance": tag.distance,
                              "timezones": tag.timezones}))
    else:
        print(tag)
    return EXIT_OK


def cmd_connected_sum(args) -> int:
    a, b = _sphere(_read(args.a)), _sphere(_read(args.b))
    try:
        m = connected_sum(a, args.tile_a, b, args.tile_b, args.rotation, args.reflect)
    except GeneratorError as exc:
        raise _Fail(EXIT_USAGE, str(exc))
    _emit(args, m, {"kind": "connected-sum"})
    return EXIT_OK


def cmd_stats(args) -> int:
    m = _sphere(_read(args.file))
    highs = high_degree_vertices(m)
    info = {"V": m.V, "E": m.E, "F": m.F,
            "degrees": {str(k): n for k, n in degree_histogram(m).items()},
            "high_degree_vertices": highs,
            "distances": distance_matrix(m, highs)}
    if args.json:
        print(json.dumps(info))
    else:
        print(f"V={m.V} E={m.E} F={m.F}")
        print("degrees: " + ", ".join(f"{k}:{n}" for k, n in degree_histogram(m).items()))
        if highs:
            print("high-degree vertices: " + " ".join(map(str, highs)))
            for v, row in zip(highs, info["distances"]):
                print(f"  {v}: " + " ".join(map(str, row)))
    return EXIT_OK


def cmd_export(args) -> int:
    obj = _read(args.file)
    if not args.raw:
        obj = io.canonical_form(obj)
    if args.format == "json":
        sys.stdout.write(io.dumps(obj))
    elif args.format == "dot":
        sys.stdout.write(io.to_dot(_sphere(obj)))
    else:
        io.write_planar_code([_sphere(obj)], sys.stdout.buffer)
        sys.stdout.flush()
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("-o", "--output", help="write the map here instead of stdout")
    out.add_argument("--raw", action="store_true", help="keep dart ids (skip canonical relabeling)")

    p = argparse.ArgumentParser(prog="pentile", description="Combinatorial pentagonal tilings.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common, out], help="write a known tiling")
    g.add_argument("kind", choices=["dodecahedron", "earthmap", "three-v4", "disk"])
    g.add_argument("name", nargs="?", help=f"disk kind: {', '.join(DISK_KINDS)}")
    g.add_argument("-d", "--distance", type=int)
    g.add_argument("-t", "--timezones", type=int)
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", parents=[common], help="validate a map file ('-' for stdin)")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", parents=[common], help="census of tilings")
    e.add_argument("--max-faces", type=int, required=True)
    e.add_argument("--naive", action="store_true", help="use the slow oracle")
    e.add_argument("--disk", action="store_true", help="fill an m-gon instead")
    e.add_argument("--boundary", type=int, help="boundary length m for --disk")
    e.add_argument("--max-high-boundary", type=int, default=1,
                   help="boundary vertices allowed degree > 3 (default 1)")
    e.add_argument("--interior-any", action="store_true",
                   help="allow interior degrees above 3")
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--max-nodes", type=int)
    e.add_argument("--output", help="write the representatives as a planar-code stream")
    e.set_defaults(func=cmd_enumerate)

    i = sub.add_parser("isom", parents=[common], help="exit 0 iff the maps are isomorphic")
    i.add_argument("a")
    i.add_argument("b")
    i.add_argument("--chiral", action="store_true", help="do not identify mirror images")
    i.set_defaults(func=cmd_isom)

    c = sub.add_parser("classify", parents=[common], help="earth-map family of a tiling")
    c.add_argument("file")
    c.set_defaults(func=cmd_classify)

    cs = sub.add_parser("connected-sum", parents=[common, out], help="glue two tilings")
    cs.add_argument("a")
    cs.add_argument("b")
    cs.add_argument("--tile-a", type=int, required=True)
    cs.add_argument("--tile-b", type=int, required=True)
    cs.add_argument("--rotation", type=int, default=0)
    cs.add_argument("--reflect", action="store_true")
    cs.set_defaults(func=cmd_connected_sum)

    s = sub.add_parser("stats", parents=[common], help="degrees, counts and pole distances")
    s.add_argument("file")
    s.set_defaults(func=cmd_stats)

    x = sub.add_parser("export", help="convert a map file")
    x.add_argument("file")
    x.add_argument("--format", choices=["json", "planarcode", "dot"], default="json")
    x.add_argument("--raw", action="store_true")
    x.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"pentile: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
