"""Explicit pentagonal tilings: dodecahedron, earth maps, connected sums, disks.

Each earth-map family is transcribed from the equator view of its figure:
one timezone is a strip of straight segments between two meridians, the
north pole collects every segment reaching the top of the strip and the
south pole every segment reaching the bottom.  ``strip_map`` glues ``t``
copies side by side.  Every builder validates its output before returning.
"""

from __future__ import annotations

from dataclasses import dataclass

from .drawing import plane_map, polyline, reflect, strip_map
from .maps import (DiskMap, SphericalMap, distance_matrix, from_faces,
                   high_degree_vertices, validate_disk, validate_pentagonal)


class GeneratorError(ValueError):
    pass


class DistanceOutOfRange(GeneratorError):
    pass


class TooFewTimezones(GeneratorError):
    pass


class InvalidFace(GeneratorError):
    pass


@dataclass(frozen=True, order=True)
class FamilyTag:
    distance: int
    timezones: int

    @property
    def pole_degree(self) -> int:
        return self.timezones if self.distance == 5 else 3 * self.timezones

    @property
    def faces(self) -> int:
        return 4 * self.timezones if self.distance == 5 else 12 * self.timezones

    def __str__(self) -> str:
        return f"earth map d={self.distance} t={self.timezones}"


def _checked(m: SphericalMap, what: str) -> SphericalMap:
    rep = validate_pentagonal(m)
    if not rep.is_valid:
        raise GeneratorError(f"{what} is not a pentagonal tiling: {rep.violations[:3]}")
    return m


def _dodecahedron_faces() -> list[list]:
    T = [("T", i) for i in range(5)]
    A = [("A", i) for i in range(5)]
    B = [("B", i) for i in range(5)]
    C = [("C", i) for i in range(5)]
    faces = [T[::-1], C]
    for i in range(5):
        j = (i + 1) % 5
        faces.append([T[i], T[j], A[j], B[i], A[i]])
        faces.append([A[j], B[j], C[j], C[i], B[i]])
    return faces


def dodecahedron() -> SphericalMap:
    """Top cap T, upper ring A, lower ring B, bottom cap C (five each)."""
    return _checked(from_faces(_dodecahedron_faces()), "dodecahedron")


# -- earth map timezones (equator views) ---------------------------------

def _zone_d5():
    return (polyline((0.3, 1), (0.3, 0.6), (0, 0.3), (0, -0.3), (-0.3, -0.6), (-0.3, -1))
            + polyline((0, 0.3), (-0.6, 0.3), (-0.6, -0.3), (-0.3, -0.6))
            + polyline((0, -0.3), (0.6, -0.3), (0.6, 0.3), (0.3, 0.6))), 1.2, 1.0, -1.0


def _zone_d4():
    segs = []
    for s in (0.0, 0.8, 1.6):
        small = (polyline((-0.2, 0.4), (-0.2, 0), (-0.4, 0))
                 + polyline((0.2, 0.4), (0.2, 0), (0.4, 0))
                 + polyline((-0.4, 0.8), (-0.2, 0.4), (0.2, 0.4), (0.4, 0.8))
                 + polyline((0.4, 0.8), (0.4, 1.3)))
        segs += [((a[0] + s, a[1]), (b[0] + s, b[1])) for a, b in small]
    segs += (polyline((-0.2, 0), (-0.2, -1.2))
             + polyline((0.2, 0), (0.2, -1.2))
             + polyline((0.6, 0), (1, -0.4), (1.2, -0.8), (1.4, -0.4), (1.8, 0))
             + polyline((1, -0.4), (1, 0))
             + polyline((1.4, -0.4), (1.4, 0))
             + polyline((1.2, -0.8), (1.2, -1.2)))
    return segs, 2.4, 1.3, -1.2


def _zone_d1():
    quarter = (polyline((0, 0), (0, 0.2), (0.3, 0.3), (0.5, 0), (0.7, 0), (0.7, 1))
               + polyline((0.3, 0.3), (0.3, 0.6), (0.7, 0.7))
               + polyline((0, 0.6), (0.3, 0.6))
               + polyline((1, 0), (1, 1)))
    segs = []
    for sx in (1, -1):
        for sy in (1, -1):
            segs += reflect(quarter, sx, sy)
    return segs, 2.0, 1.0, -1.0


def _zone_d2():
    half = (polyline((-1, 0), (-0.8, 0), (-0.6, 0.3), (-0.6, 1))
            + polyline((-0.6, 0.3), (-0.3, 0.2), (-0.1, 0.4), (0.2, 0), (0.4, 0))
            + polyline((-0.3, 0.2), (-0.3, 0))
            + polyline((-0.6, 0.7), (-0.1, 0.6), (-0.1, 0.4))
            + polyline((-0.1, 0.6), (0.5, 0.5))
            + polyline((0.4, 0), (0.5, 0.5), (0.75, 0.5))
            + polyline((1, 0), (1, 1))
            + polyline((0.75, 0), (0.75, 1)))
    return half + reflect(half, 1, -1), 2.0, 1.0, -1.0


def _zone_d3():
    half = (polyline((-1, -0.2), (-0.8, -0.2), (-0.7, 0.2), (-0.7, 1))
            + polyline((-0.7, 0.2), (-0.4, 0.2), (-0.4, -0.2), (-0.6, -0.5), (-0.8, -0.2))
            + polyline((-0.4, 0.2), (-0.2, 0.5), (0, 0.2), (0, -0.2), (-0.4, -0.2))
            + polyline((-0.2, 0.5), (0.2, 0.8), (0.6, 0.5))
            + polyline((0.2, 0.8), (0.2, 1)))
    # the second half is the first turned by a half turn
    return half + reflect(half, -1, -1) + polyline((1, -1), (1, 1)), 2.0, 1.0, -1.0


_ZONES = {1: _zone_d1, 2: _zone_d2, 3: _zone_d3, 4: _zone_d4, 5: _zone_d5}


def earth_map(distance: int, timezones: int) -> SphericalMap:
    """Earth map tiling with poles at the given distance and ``timezones`` zones."""
    if distance not in _ZONES:
        raise DistanceOutOfRange(f"distance must be in 1..5, got {distance}")
    need = 4 if distance == 5 else 2
    if timezones < need:
        raise TooFewTimezones(
            f"distance {distance} needs at least {need} timezones, got {timezones}")
    segs, width, top, bottom = _ZONES[distance]()
    m = _checked(strip_map(segs, width, timezones, top, bottom),
                 f"earth_map({distance}, {timezones})")
    tag = FamilyTag(distance, timezones)
    poles = high_degree_vertices(m)
    if (len(poles) != 2 or {m.degrees[p] for p in poles} != {tag.pole_degree}
            or m.F != tag.faces or distance_matrix(m, poles)[0][1] != distance):
        raise GeneratorError(f"transcription of family d={distance} is inconsistent")
    return m


def earth_map_via_meridian_3prime(timezones: int) -> SphericalMap:
    """Distance-2 family rebuilt from timezones cut along alternate meridian paths.

    Written as a face list, independent of the drawing used by
    :func:`earth_map`.  Each zone runs from the path N-a_k-a'_k-S to the
    next one; ``m_k`` is the middle vertex of the length-2 meridian inside.
    """
    if timezones < 2:
        raise TooFewTimezones("need at least 2 timezones")
    t = timezones
    faces = []
    for k in range(t):
        def v(name, j=k):
            return (name, j % t)
        N, S = ("N",), ("S",)
        a, a_ = v("a"), v("a'")
        b, b_ = v("a", k + 1), v("a'", k + 1)
        m = v("m")
        p2, p3, p3_, p4, p4_ = v("p2"), v("p3"), v("p3'"), v("p4"), v("p4'")
        p5, p5_, p6, p6_, p7, p7_ = v("p5"), v("p5'"), v("p6"), v("p6'"), v("p7"), v("p7'")
        p9, p10, p11, p11_ = v("p9"), v("p10"), v("p11"), v("p11'")
        faces += [
            [a_, S, m, N, a],
            [m, p2, p3, p4, N],
            [m, S, p4_, p3_, p2],
            [p2, p3_, p5_, p5, p3],
            [p3, p5, p7, p6, p4],
            [p4_, p6_, p7_, p5_, p3_],
            [p5_, p7_, p9, p7, p5],
            [p7, p9, p10, p11, p6],
            [p6_, p11_, p10, p9, p7_],
            [p4, p6, p11, b, N],
            [p4_, S, b_, p11_, p6_],
            [p10, p11_, b_, b, p11],
        ]
    return _checked(from_faces(faces), "alternate meridian construction")


def three_v4_example() -> SphericalMap:
    """Eighteen tiles, three degree-4 vertices pairwise at distance 3.

    The four outward rays of the drawing meet at the point at infinity.
    """
    quarter = (polyline((0, 1.1), (0.4, 1.1), (1.2, 1.2), (1.1, 0.4), (1.1, 0))
               + polyline((0, 0.6), (0.4, 0.8), (0.8, 0.4), (0.6, 0))
               + polyline((0.4, 0.8), (0.4, 1.1))
               + polyline((0.8, 0.4), (1.1, 0.4))
               + polyline((1.2, 1.2), (1.5, 1.5)))
    half = (polyline((0.4, 0.8), (0.2, 0.2), (0, 0))
            + polyline((0, -0.6), (0.3, -0.1))
            + polyline((0.2, 0.2), (0.3, -0.1), (0.6, 0)))
    segs = []
    for sx in (1, -1):
        for sy in (1, -1):
            segs += reflect(quarter, sx, sy)
    segs += half + reflect(half, -1, -1)
    return _checked(plane_map(segs, radius=2.0), "three_v4_example")


# -- connected sum --------------------------------------------------------

def connected_sum(a: SphericalMap, tile_a: int, b: SphericalMap, tile_b: int,
                  rotation: int = 0, reflect: bool = False) -> SphericalMap:
    """Remove face ``tile_a`` of ``a`` and ``tile_b`` of ``b`` and glue the holes.

    Faces are indexed by position in ``face_orbits``.  ``rotation`` picks
    which of the five boundary alignments is used and ``reflect`` glues the
    mirror image of ``b``.
    """
    for m, f, name in ((a, tile_a, "tile_a"), (b, tile_b, "tile_b")):
        if not 0 <= f < m.F:
            raise InvalidFace(f"{name}={f} is not a face index")
        if len(m.face_orbits[f]) != 5:
            raise InvalidFace(f"{name}={f} is not a pentagon")
    fa = a.face_orbits[tile_a]
    fb = b.face_orbits[tile_b]
    if reflect:
        b = b.mirror()
        start = b.alpha[fb[0]]
        fb = [start]
        while len(fb) < 5:
            fb.append(b.phi[fb[-1]])
    drop_a, drop_b = set(fa), set(fb)
    keep_a = [d for d in range(a.n_darts) if d not in drop_a]
    keep_b = [d for d in range(b.n_darts) if d not in drop_b]
    new_a = {d: i for i, d in enumerate(keep_a)}
    new_b = {d: i + len(keep_a) for i, d in enumerate(keep_b)}
    n = len(keep_a) + len(keep_b)
    phi = [0] * n
    alpha = [-1] * n
    for d in keep_a:
        phi[new_a[d]] = new_a[a.phi[d]]
        if a.alpha[d] not in drop_a:
            alpha[new_a[d]] = new_a[a.alpha[d]]
    for d in keep_b:
        phi[new_b[d]] = new_b[b.phi[d]]
        if b.alpha[d] not in drop_b:
            alpha[new_b[d]] = new_b[b.alpha[d]]
    r = rotation % 5
    for i in range(5):
        x = new_a[a.alpha[fa[i]]]
        y = new_b[b.alpha[fb[(r - i) % 5]]]
        alpha[x], alpha[y] = y, x
    sigma = [phi[alpha[d]] for d in range(n)]
    return _checked(SphericalMap(tuple(sigma), tuple(alpha)), "connected sum")


# -- disks -----------------------------------------------------------------

DISK_KINDS = ("8gon", "9gon", "dodeca_minus_tile", "single_pentagon",
              "dodeca_minus_tile_slit")


def disk_fixture(kind: str) -> DiskMap:
    if kind == "single_pentagon":
        tile = list("abcde")
        m = from_faces([tile, tile[::-1]])
        disk = DiskMap(m, outer=m.face_of[_dart(m, "e", "d", [tile, tile[::-1]])])
    elif kind == "8gon":
        right = ["B", "r-40", "r0", "r40", "T"]
        left = ["T", "l40", "l0", "l-40", "B"]
        outer = ["T", "r40", "r0", "r-40", "B", "l-40", "l0", "l40"]
        faces = [right, left, outer]
        m = from_faces(faces)
        disk = DiskMap(m, outer=m.face_of[_dart(m, "T", "r40", faces)])
    elif kind == "9gon":
        faces = [["O", ("s", j), ("q", j), ("q'", j), ("s", (j + 1) % 3)] for j in range(3)]
        outer = [("s", 0), ("q'", 2), ("q", 2), ("s", 2), ("q'", 1), ("q", 1),
                 ("s", 1), ("q'", 0), ("q", 0)]
        faces.append(outer)
        m = from_faces(faces)
        disk = DiskMap(m, outer=m.face_of[_dart(m, ("s", 0), ("q'", 2), faces)])
    elif kind == "dodeca_minus_tile_slit":
        # remove the top cap, then cut open the edge T0-A0: T0 splits into
        # two degree-2 corners X, Y and A0 joins the boundary with degree 4
        faces = _dodecahedron_faces()[1:]
        t0, t1 = ("T", 0), ("T", 1)
        faces = [[("X" if t1 in f else "Y") if v == t0 else v for v in f] for f in faces]
        outer = [("T", 4), ("T", 3), ("T", 2), t1, "X", ("A", 0), "Y"]
        faces.append(outer)
        m = from_faces(faces)
        disk = DiskMap(m, outer=m.face_of[_dart(m, t1, "X", faces)])
    elif kind == "dodeca_minus_tile":
        m = dodecahedron()
        disk = DiskMap(m, outer=m.face_of[0])
    else:
        raise ValueError(f"unknown disk kind {kind!r}; expected one of {DISK_KINDS}")
    rep = validate_disk(disk)
    if not rep.is_valid:
        raise GeneratorError(f"disk {kind} invalid: {rep.violations}")
    return disk


def _dart(m: SphericalMap, u, v, faces) -> int:
    """Dart number of the directed edge u -> v as assigned by from_faces."""
    n = 0
    for f in faces:
        k = len(f)
        for i in range(k):
            if (f[i], f[(i + 1) % k]) == (u, v):
                # from_faces numbers directed edges in this same order
                return _face_dart_of(m, n)
            n += 1
    raise KeyError((u, v))


def _face_dart_of(m: SphericalMap, d: int) -> int:
    # dart d runs along the face on its left; the phi-orbit holding that
    # face is the one through the reverse dart
    return m.alpha[d]
