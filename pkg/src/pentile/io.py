"""File formats: JSON map files, a dart-level planar-code stream, DOT."""

from __future__ import annotations

import json
import struct
from typing import BinaryIO, Iterable, Iterator

from .iso import _bfs_dart_order, canonical_roots
from .maps import DiskMap, SphericalMap

VERSION = 1
PLANAR_HEADER = b">>planar_code_darts le<<"


def canonical_form(obj: SphericalMap | DiskMap) -> SphericalMap | DiskMap:
    """Relabel darts into canonical BFS order (outer face kept for disks)."""
    if isinstance(obj, DiskMap):
        from .iso import face_root_pairs, minimal_listing
        m = obj.map
        _, winners = minimal_listing(m, face_root_pairs(m, obj.outer))
        root, refl = winners[0]
    else:
        m = obj
        root, refl = canonical_roots(m)[0]
    src = m.mirror() if refl else m
    perm = [0] * m.n_darts
    for new, old in enumerate(_bfs_dart_order(src, root)):
        perm[old] = new
    out = src.relabel(perm)
    if isinstance(obj, DiskMap):
        outer_dart = perm[obj.outer] if not refl else perm[m.alpha[obj.outer]]
        return DiskMap(out, out.face_of[outer_dart])
    return out


# -- JSON -----------------------------------------------------------------

def to_dict(obj: SphericalMap | DiskMap, metadata: dict[str, str] | None = None) -> dict:
    meta = dict(metadata or {})
    m = obj.map if isinstance(obj, DiskMap) else obj
    if isinstance(obj, DiskMap):
        meta["outer_dart"] = str(obj.outer)
    return {"version": VERSION,
            "vertices": [list(orb) for orb in m.vertex_orbits],
            "pairing": list(m.alpha),
            "metadata": {str(k): str(v) for k, v in meta.items()}}


def from_dict(data: dict) -> SphericalMap | DiskMap:
    if data.get("version") != VERSION:
        raise ValueError(f"unsupported map file version {data.get('version')!r}")
    pairing = data["pairing"]
    sigma = [-1] * len(pairing)
    for orb in data["vertices"]:
        for i, d in enumerate(orb):
            if not 0 <= d < len(pairing) or sigma[d] != -1:
                raise ValueError(f"dart {d} listed twice or out of range")
            sigma[d] = orb[(i + 1) % len(orb)]
    if -1 in sigma:
        raise ValueError("some darts are not listed at any vertex")
    m = SphericalMap.from_permutations(sigma, pairing)
    meta = data.get("metadata", {})
    if "outer_dart" in meta:
        return DiskMap(m, m.face_of[int(meta["outer_dart"])])
    return m


def dumps(obj, metadata: dict[str, str] | None = None) -> str:
    return json.dumps(to_dict(obj, metadata), separators=(",", ":")) + "\n"


def loads(text: str):
    return from_dict(json.loads(text))


# -- planar code (dart variant) --------------------------------------------
# Per map: uint16 V, uint16 number of darts, then for each vertex its darts
# (+1) in counterclockwise order ending with 0, then the pairing as one
# uint16 per dart.  All integers little endian.

def write_planar_code(maps: Iterable[SphericalMap], fh: BinaryIO, header: bool = True) -> None:
    if header:
        fh.write(PLANAR_HEADER)
    for m in maps:
        fh.write(_encode(m))


def _encode(m: SphericalMap) -> bytes:
    vals = [m.V, m.n_darts]
    for orb in m.vertex_orbits:
        vals.extend(d + 1 for d in orb)
        vals.append(0)
    vals.extend(m.alpha)
    return struct.pack(f"<{len(vals)}H", *vals)


def read_planar_code(data: bytes) -> Iterator[SphericalMap]:
    pos = 0
    n = len(data)
    while pos < n:
        if data.startswith(PLANAR_HEADER, pos):
            pos += len(PLANAR_HEADER)
            continue
        V, nd = struct.unpack_from("<2H", data, pos)
        pos += 4
        sigma = [-1] * nd
        for _ in range(V):
            orb = []
            while True:
                (x,) = struct.unpack_from("<H", data, pos)
                pos += 2
                if x == 0:
                    break
                orb.append(x - 1)
            for i, d in enumerate(orb):
                sigma[d] = orb[(i + 1) % len(orb)]
        alpha = struct.unpack_from(f"<{nd}H", data, pos)
        pos += 2 * nd
        yield SphericalMap.from_permutations(sigma, alpha)


# -- DOT --------------------------------------------------------------------

def to_dot(m: SphericalMap, name: str = "tiling") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v} [label=\"{v}\\ndeg {k}\"];" for v, k in enumerate(m.degrees)]
    for d in range(m.n_darts):
        if d < m.alpha[d]:
            lines.append(f"  {m.origin(d)} -- {m.head(d)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
