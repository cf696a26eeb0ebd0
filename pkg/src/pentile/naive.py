"""A slow, independent oracle for the sphere census.

Nothing here is shared with :mod:`pentile.search` beyond the final map and
code types.  A state is only the list of tile sides and the partial edge
pairing.  Vertices and holes are recomputed from scratch at every node.
The first open side is always extended.  The only pruning is what validity
forces (a vertex never meets a tile twice, closed vertices have degree at
least 3) plus the face-count bound through the excess identity.  Duplicates
are removed afterwards by canonical code.
"""

from __future__ import annotations

import os
import time

from .iso import canonical_code
from .maps import SphericalMap, validate_pentagonal
from .search import BudgetExceeded, EnumerationReport


def _scan(alpha: list[int], n: int, budget: int):
    """Vertices of a partial gluing; returns ``next_side`` or None if invalid.

    ``next_side[s]`` is the open side leaving the vertex that open side
    ``s`` enters.
    """
    sigma = {}
    for d in range(n):
        if alpha[d] >= 0:
            a = alpha[d]
            sigma[d] = a - a % 5 + (a + 1) % 5
    has_pred = set(sigma.values())
    seen = set()
    excess = 0
    nxt = {}
    starts = [d for d in range(n) if d not in has_pred] + list(range(n))
    for d0 in starts:
        if d0 in seen:
            continue
        tiles = set()
        d = d0
        k = 0
        while True:
            seen.add(d)
            k += 1
            if d // 5 in tiles:
                return None
            tiles.add(d // 5)
            if d not in sigma:
                cycle = False
                break
            d = sigma[d]
            if d == d0:
                cycle = True
                break
        if cycle and k < 3:
            return None
        excess += max(0, k - 3)
        if excess > budget:
            return None
        if not cycle:
            s = d0 - d0 % 5 + (d0 - 1) % 5    # side entering this vertex
            nxt[s] = d
    return nxt


def enumerate_sphere_naive(max_faces: int, max_seconds: float | None = None) -> EnumerationReport:
    """Census by plain backtracking; meant for ``max_faces <= 16``."""
    if max_faces < 12:
        raise ValueError("max_faces must be at least 12")
    if max_seconds is None and os.environ.get("PENTILE_BUDGET_SECS"):
        max_seconds = float(os.environ["PENTILE_BUDGET_SECS"])
    t0 = time.monotonic()
    budget = (max_faces - 12) // 2
    codes: dict[bytes, int] = {}
    nodes = 0
    stack = [(1, [-1] * (5 * max_faces))]
    while stack:
        tiles, alpha = stack.pop()
        nodes += 1
        if max_seconds is not None and nodes % 256 == 0 and time.monotonic() - t0 > max_seconds:
            counts = _tally(codes, max_faces)
            raise BudgetExceeded("wall-clock limit reached",
                                 EnumerationReport(counts, time.monotonic() - t0,
                                                   nodes=nodes, complete=False))
        n = 5 * tiles
        nxt = _scan(alpha, n, budget)
        if nxt is None:
            continue
        if not nxt:
            m = SphericalMap.from_permutations(
                [alpha[d] - alpha[d] % 5 + (alpha[d] + 1) % 5 for d in range(n)],
                alpha[:n])
            if validate_pentagonal(m):
                codes.setdefault(canonical_code(m), m.F)
            continue
        ell = min(nxt.values())
        hole = [ell]
        while nxt[hole[-1]] != ell:
            hole.append(nxt[hole[-1]])
        # ell, then any other side of its hole, or a fresh tile
        for y in hole[1:]:
            a = alpha[:]
            a[ell], a[y] = y, ell
            stack.append((tiles, a))
        if tiles < max_faces:
            a = alpha[:]
            a[ell], a[n] = n, ell
            stack.append((tiles + 1, a))
    rep = EnumerationReport(_tally(codes, max_faces), time.monotonic() - t0, nodes=nodes)
    rep.corpus = sorted(codes, key=lambda c: (codes[c], c))
    return rep


def _tally(codes: dict, max_faces: int) -> dict[int, int]:
    counts = {f: 0 for f in range(12, max_faces + 1, 2)}
    for f in codes.values():
        counts[f] = counts.get(f, 0) + 1
    return counts
