"""Canonical codes and isomorphism tests for sphere maps.

The code of a map rooted at a dart is a breadth-first listing: each vertex
is written as its degree followed by, for every dart in rotation order
(starting at the dart through which the vertex was first reached), the BFS
number of the neighbour and the rotation offset of the returning dart at
that neighbour.  The offsets make the listing a complete description of
the map even with parallel edges.  The canonical code is the smallest
listing over all roots at maximum-degree vertices and, when reflections are
identified, over both orientations.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .maps import SphericalMap


class CanonicalCode(bytes):
    """Byte fingerprint; equal codes mean isomorphic maps."""


def _pack(values: Sequence[int]) -> bytes:
    return b"".join(v.to_bytes(2, "big") for v in values)


def _positions(m: SphericalMap) -> list[int]:
    pos = [0] * m.n_darts
    for orb in m.vertex_orbits:
        for i, d in enumerate(orb):
            pos[d] = i
    return pos


def rooted_listing(m: SphericalMap, root: int, reflect: bool = False,
                   bound: list[int] | None = None) -> list[int] | None:
    """BFS listing of ``m`` rooted at ``root``.

    ``reflect`` walks rotations clockwise.  When ``bound`` is given, the
    walk stops and returns None as soon as the listing exceeds it.
    """
    rot = m.sigma_inv if reflect else m.sigma
    alpha = m.alpha
    vof = m.vertex_of
    pos = _positions(m)
    degs = {orb[0]: len(orb) for orb in m.vertex_orbits}
    label: dict[int, int] = {vof[root]: 0}
    entry = {vof[root]: root}
    queue = [vof[root]]
    out: list[int] = []
    equal = bound is not None

    def emit(x: int) -> bool:
        nonlocal equal
        i = len(out)
        out.append(x)
        if equal:
            b = bound[i]
            if x > b:
                return False
            if x < b:
                equal = False
        return True

    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        k = degs[v]
        if not emit(k):
            return None
        d = entry[v]
        for _ in range(k):
            back = alpha[d]
            w = vof[back]
            if w not in label:
                label[w] = len(queue)
                entry[w] = back
                queue.append(w)
            kw = degs[w]
            off = (pos[back] - pos[entry[w]]) % kw
            if reflect:
                off = (-off) % kw
            if not emit(label[w]) or not emit(off):
                return None
            d = rot[d]
    return out


def candidate_roots(m: SphericalMap) -> list[int]:
    top = max(m.degrees)
    return [d for orb in m.vertex_orbits if len(orb) == top for d in orb]


def minimal_listing(m: SphericalMap, roots: Iterable[tuple[int, bool]]) -> tuple[list[int], list[tuple[int, bool]]]:
    """Smallest listing over ``(root, reflect)`` pairs and the pairs attaining it."""
    best: list[int] | None = None
    winners: list[tuple[int, bool]] = []
    for r, refl in roots:
        lst = rooted_listing(m, r, refl, best)
        if lst is None:
            continue
        if best is None or lst < best:
            best, winners = lst, [(r, refl)]
        else:
            winners.append((r, refl))
    assert best is not None
    return best, winners


def _root_pairs(m: SphericalMap, include_reflections: bool,
                roots: Sequence[int] | None = None,
                mirror_roots: Sequence[int] | None = None):
    roots = candidate_roots(m) if roots is None else roots
    pairs = [(r, False) for r in roots]
    if include_reflections:
        mr = roots if mirror_roots is None else mirror_roots
        pairs += [(r, True) for r in mr]
    return pairs


def canonical_code(m: SphericalMap, include_reflections: bool = True) -> CanonicalCode:
    listing, _ = minimal_listing(m, _root_pairs(m, include_reflections))
    return CanonicalCode(_pack([m.V, m.E] + listing))


def canonical_roots(m: SphericalMap, include_reflections: bool = True) -> list[tuple[int, bool]]:
    """All ``(root, reflect)`` pairs whose listing equals the canonical one."""
    return minimal_listing(m, _root_pairs(m, include_reflections))[1]


def face_rooted_code(m: SphericalMap, face_dart: int,
                     include_reflections: bool = True) -> CanonicalCode:
    """Canonical code with roots restricted to one face (kept setwise fixed)."""
    listing, _ = minimal_listing(m, face_root_pairs(m, face_dart, include_reflections))
    return CanonicalCode(_pack([m.V, m.E] + listing))


def face_root_pairs(m: SphericalMap, face_dart: int, include_reflections: bool = True):
    face = m.face_orbits[_face_index(m, face_dart)]
    pairs = [(d, False) for d in face]
    if include_reflections:
        # reversing rotations turns the face orbit of d into alpha of it
        pairs += [(m.alpha[d], True) for d in face]
    return pairs


def _face_index(m: SphericalMap, dart: int) -> int:
    fid = m.face_of[dart]
    for i, orb in enumerate(m.face_orbits):
        if orb[0] == fid:
            return i
    raise KeyError(dart)


def canonical_relabeling(m: SphericalMap, include_reflections: bool = True) -> SphericalMap:
    """Relabel darts in canonical BFS order (orientation follows the winner)."""
    root, refl = canonical_roots(m, include_reflections)[0]
    src = m.mirror() if refl else m
    order = _bfs_dart_order(src, root)
    perm = [0] * m.n_darts
    for new, old in enumerate(order):
        perm[old] = new
    return src.relabel(perm)


def _bfs_dart_order(m: SphericalMap, root: int) -> list[int]:
    vof = m.vertex_of
    seen = {vof[root]}
    queue = deque([root])
    order = []
    while queue:
        d = queue.popleft()
        start = d
        while True:
            order.append(d)
            back = m.alpha[d]
            if vof[back] not in seen:
                seen.add(vof[back])
                queue.append(back)
            d = m.sigma[d]
            if d == start:
                break
    return order


def isomorphic(a: SphericalMap, b: SphericalMap, include_reflections: bool = True) -> bool:
    if (a.V, a.E, a.F) != (b.V, b.E, b.F):
        return False
    return canonical_code(a, include_reflections) == canonical_code(b, include_reflections)


# -- direct matcher ------------------------------------------------------

def _extend(a: SphericalMap, b_sigma: Sequence[int], b_alpha: Sequence[int], r: int) -> bool:
    """Try the dart map 0 -> r and propagate through sigma and alpha."""
    n = a.n_darts
    f = [-1] * n
    f[0] = r
    stack = [0]
    while stack:
        d = stack.pop()
        img = f[d]
        for src, dst in ((a.sigma[d], b_sigma[img]), (a.alpha[d], b_alpha[img])):
            if f[src] < 0:
                f[src] = dst
                stack.append(src)
            elif f[src] != dst:
                return False
    return len(set(f)) == n


def isomorphic_by_matching(a: SphericalMap, b: SphericalMap,
                           include_reflections: bool = True) -> bool:
    """Backtracking matcher; independent of the canonical code."""
    if a.n_darts != b.n_darts:
        return False
    targets = [(b.sigma, b.alpha)]
    if include_reflections:
        targets.append((b.sigma_inv, b.alpha))
    deg0 = len(a.vertex_orbits[0])
    for bs, ba in targets:
        for r in range(b.n_darts):
            if len(b.vertex_orbits[b.origin(r)]) != deg0:
                continue
            if _extend(a, bs, ba, r):
                return True
    return False
