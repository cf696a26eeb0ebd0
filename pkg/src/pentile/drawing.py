"""Turn straight-line drawings into rotation systems.

The explicit tilings are transcribed as plane drawings: lists of straight
segments, with one or two special vertices (a pole or the point at
infinity) collecting every segment that reaches a marked region.  The
rotation at an ordinary vertex is read off from the directions of its
segments.  Points of degree two are treated as bends of a single edge, and
a point lying in the interior of a segment splits it.
"""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Callable, Sequence

from .maps import SphericalMap, build_from_rotations

Point = tuple[float, float]
Segment = tuple[Point, Point]

_EPS = 1e-7


def _key(p: Point, period: float | None) -> tuple[int, int]:
    x, y = p
    if period is not None:
        x = x % period
        if abs(x - period) < 1e-6:
            x = 0.0
    return (round(x * 1e5), round(y * 1e5))


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    (px, py), (ax, ay), (bx, by) = p, a, b
    dx, dy = bx - ax, by - ay
    cross = (px - ax) * dy - (py - ay) * dx
    if abs(cross) > _EPS * max(1.0, math.hypot(dx, dy)):
        return False
    t = ((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy)
    return _EPS < t < 1 - _EPS


def map_from_drawing(segments: Sequence[Segment],
                     special: Callable[[Point], tuple[str, float] | None],
                     period: float | None = None) -> SphericalMap:
    """Build the map of a drawing.

    ``special(p)`` returns ``(name, order_key)`` when ``p`` belongs to a
    special vertex; edges arriving there are arranged counterclockwise by
    increasing ``order_key``.  With ``period`` set, x-coordinates are
    periodic (a strip closed into a cylinder whose two ends are the poles).
    """
    # every ordinary point that occurs, for T-junction splitting
    points: dict[tuple[int, int], Point] = {}
    for seg in segments:
        for p in seg:
            if special(p) is None:
                points.setdefault(_key(p, period), p)

    pieces: dict[frozenset, tuple] = {}
    for a, b in segments:
        inner = []
        for q in points.values():
            shifts = (-period, 0.0, period) if period else (0.0,)
            for s in shifts:
                qq = (q[0] + s, q[1])
                if _on_segment(qq, a, b):
                    inner.append(qq)
        dx, dy = b[0] - a[0], b[1] - a[1]
        inner.sort(key=lambda q: (q[0] - a[0]) * dx + (q[1] - a[1]) * dy)
        chain = [a] + inner + [b]
        for p, q in zip(chain, chain[1:]):
            ends = []
            for u, v in ((p, q), (q, p)):
                sp = special(u)
                if sp is not None:
                    ends.append((sp[0], sp[1], None))
                else:
                    ang = math.atan2(v[1] - u[1], v[0] - u[0])
                    ends.append((_key(u, period), None, ang))
            if ends[0][0] == ends[1][0] and ends[0][1] is None:
                raise ValueError(f"degenerate segment at {p}")
            if isinstance(ends[0][0], str) and ends[0][0] == ends[1][0]:
                continue  # lies entirely inside a special region
            ident = frozenset(_end_id(e) for e in ends)
            pieces.setdefault(ident, tuple(ends))

    # incidences of ordinary points, then dissolve degree-2 bends
    inc: dict = defaultdict(list)
    for pid, ends in pieces.items():
        for side in (0, 1):
            inc[ends[side][0]].append((pid, side))
    bends = {v for v, lst in inc.items() if not isinstance(v, str) and len(lst) == 2}

    used = set()
    edges = []  # each edge: (end0, end1) with end = (vertex, order_key or angle)
    for pid, ends in pieces.items():
        if pid in used:
            continue
        if ends[0][0] in bends and ends[1][0] in bends:
            continue  # start walks from real vertices only
        start_side = 0 if ends[0][0] not in bends else 1
        first = ends[start_side]
        cur_pid, cur_side = pid, start_side
        while True:
            used.add(cur_pid)
            far = pieces[cur_pid][1 - cur_side]
            if far[0] not in bends:
                edges.append((first, far))
                break
            nxt = [x for x in inc[far[0]] if x[0] != cur_pid]
            if len(nxt) != 1:
                raise ValueError("bend with a repeated piece")
            cur_pid, cur_side = nxt[0]
    if len(used) != len(pieces):
        raise ValueError("drawing contains a cycle made only of bends")

    rot: dict = defaultdict(list)
    pairing = []
    for e0, e1 in edges:
        d0 = len(pairing)
        pairing.extend([d0 + 1, d0])
        for d, end in ((d0, e0), (d0 + 1, e1)):
            order = end[1] if end[1] is not None else end[2]
            rot[end[0]].append((order, d))
    lists = []
    for v in sorted(rot, key=str):
        lst = sorted(rot[v])
        for (o1, _), (o2, _) in zip(lst, lst[1:]):
            if abs(o1 - o2) < 1e-9:
                raise ValueError(f"two edges leave {v} in the same direction")
        lists.append([d for _, d in lst])
    return build_from_rotations(lists, pairing)


def _end_id(end):
    v, order, ang = end
    return (v, round(order * 1e5)) if order is not None else (v, round(ang * 1e6))


def strip_map(unit: Sequence[Segment], width: float, copies: int,
              top: float, bottom: float) -> SphericalMap:
    """Close ``copies`` side-by-side copies of a strip drawing into a sphere.

    Points with ``y >= top`` are the north pole and ``y <= bottom`` the south
    pole; x runs east.
    """
    total = width * copies
    segs = [((a[0] + k * width, a[1]), (b[0] + k * width, b[1]))
            for k in range(copies) for a, b in unit]

    def special(p):
        if p[1] >= top - _EPS:
            return ("N", p[0] % total)
        if p[1] <= bottom + _EPS:
            return ("S", -(p[0] % total))
        return None

    return map_from_drawing(segs, special, period=total)


def plane_map(segments: Sequence[Segment], radius: float) -> SphericalMap:
    """Map of a plane drawing; points at distance >= radius are infinity."""
    def special(p):
        if math.hypot(*p) >= radius - _EPS:
            return ("inf", -math.atan2(p[1], p[0]))
        return None

    return map_from_drawing(segments, special)


def polyline(*pts: Point) -> list[Segment]:
    return list(zip(pts, pts[1:]))


def reflect(segs: Sequence[Segment], sx: float = 1.0, sy: float = 1.0) -> list[Segment]:
    return [((a[0] * sx, a[1] * sy), (b[0] * sx, b[1] * sy)) for a, b in segs]
