"""Isomorph-free generation of pentagonal tilings by gluing tiles.

A partial tiling is a set of tiles (tile 0 is the root tile, or the outer
face for disks) with some sides glued in pairs.  The open sides form
*holes*: cyclic lists of sides in face order.  Between two consecutive
sides of a hole sits an open *corner*, a vertex whose cyclic order of tile
corners is known only as a chain; it carries the number ``k`` of tile
corners and a bitmask of the tiles involved.  Each search step picks one
corner and decides what lies across its leaving side: the entering side
of the same corner (the vertex closes), a fresh pentagon, or another open
side of the same hole.

Every rooted tiling is produced exactly once, so each isomorphism class is
emitted once by accepting a finished map only when its root dart realises
the minimal canonical listing.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .iso import CanonicalCode, _pack, face_root_pairs, _root_pairs, rooted_listing
from .maps import DiskMap, SphericalMap

INF = 1 << 20


class BudgetExceeded(RuntimeError):
    """Raised when a node or wall-clock limit stops a search early.

    ``report`` holds the partial tallies, marked ``complete=False``.
    """

    def __init__(self, message: str, report: "EnumerationReport | None" = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class DiskConstraints:
    m: int
    max_high_degree_boundary: int = 1
    interior_degree_exactly_3: bool = True
    max_faces: int = 15

    def __post_init__(self):
        if self.m < 2 or self.max_faces < 1 or self.max_high_degree_boundary < 0:
            raise ValueError(f"invalid disk constraints {self}")


@dataclass
class EnumerationReport:
    """Tallies of one enumeration run.

    ``counts`` maps a face count (interior tiles for disks) to the number of
    isomorphism classes.  ``corpus`` lists the canonical codes in output
    order and ``maps`` the matching representatives.  ``complete`` is False
    when a budget cut the run short.
    """

    counts: dict[int, int]
    elapsed: float = 0.0
    corpus: list[CanonicalCode] = field(default_factory=list)
    maps: list = field(default_factory=list)
    nodes: int = 0
    complete: bool = True

    def merge(self, other: "EnumerationReport") -> "EnumerationReport":
        counts = dict(self.counts)
        for f, n in other.counts.items():
            counts[f] = counts.get(f, 0) + n
        return EnumerationReport(counts, max(self.elapsed, other.elapsed),
                                 self.corpus + other.corpus, self.maps + other.maps,
                                 self.nodes + other.nodes,
                                 self.complete and other.complete)


# -- partial tilings ------------------------------------------------------

class _State:
    __slots__ = ("sizes", "alpha", "holes", "ck", "cm", "root", "n_tiles",
                 "closed_excess", "closed_max", "closed_high", "D")

    def copy(self) -> "_State":
        s = _State.__new__(_State)
        s.sizes = self.sizes
        s.alpha = self.alpha[:]
        s.holes = [h[:] for h in self.holes]
        s.ck = dict(self.ck)
        s.cm = dict(self.cm)
        s.root = self.root
        s.n_tiles = self.n_tiles
        s.closed_excess = self.closed_excess
        s.closed_max = self.closed_max
        s.closed_high = self.closed_high
        s.D = self.D
        return s


def _initial(first: int, capacity: int) -> _State:
    s = _State()
    s.sizes = first
    s.alpha = [-1] * (first + 5 * capacity)
    s.holes = [list(range(first))]
    s.ck = {d: 1 for d in range(first)}
    s.cm = {d: 1 for d in range(first)}
    s.root = first - 1          # corner at the origin of dart 0
    s.n_tiles = 1
    s.closed_excess = 0
    s.closed_max = 0
    s.closed_high = 0
    s.D = None
    return s


def _tile_of(s: _State, d: int) -> int:
    return 0 if d < s.sizes else 1 + (d - s.sizes) // 5


def _phi(s: _State, d: int) -> int:
    if d < s.sizes:
        return (d + 1) % s.sizes
    t = (d - s.sizes) // 5
    return s.sizes + 5 * t + (d - s.sizes + 1) % 5


class _Rules:
    """Degree bounds and bookkeeping shared by the sphere and disk searches."""

    max_tiles: int

    def bounds(self, s: _State, key: int) -> tuple[int, int]:
        raise NotImplementedError

    def close(self, s: _State, key: int, k: int, mask: int) -> bool:
        raise NotImplementedError

    def globally_ok(self, s: _State) -> bool:
        return True


class _SphereRules(_Rules):
    def __init__(self, max_faces: int):
        self.max_tiles = max_faces
        self.budget = (max_faces - 12) // 2

    def _free(self, s: _State) -> int:
        used = s.closed_excess
        for k in s.ck.values():
            if k > 3:
                used += k - 3
        return self.budget - used

    def bounds(self, s, key):
        k = s.ck[key]
        hi = max(k, 3) + self._free(s)
        if s.D is not None:
            hi = min(hi, s.D)
        return 3, hi

    def close(self, s, key, k, mask):
        if k < 3:
            return False
        if s.D is not None and k > s.D:
            return False
        s.closed_excess += k - 3
        if key == s.root:
            s.D = k
            s.root = -1
            if s.closed_max > k or any(v > k for v in s.ck.values()):
                return False
        s.closed_max = max(s.closed_max, k)
        return True

    def globally_ok(self, s):
        return self._free(s) >= 0


class _DiskRules(_Rules):
    """Disk fillings.

    Euler's formula for a filled m-gon gives
    ``F = 6 + sum over boundary (2b - 5) + 2 * sum over interior (d - 3)``.
    Every term grows with the degrees, so the current corners bound the
    final tile count from below; ``closed_excess`` holds the closed part.
    """

    def __init__(self, c: DiskConstraints):
        self.c = c
        self.max_tiles = c.max_faces + 1

    def _high(self, s: _State) -> int:
        n = s.closed_high
        for key, k in s.ck.items():
            if k > 3 and s.cm[key] & 1:
                n += 1
        return n

    def _slack(self, s: _State) -> int:
        lb = 6 + s.closed_excess
        for key, k in s.ck.items():
            if s.cm[key] & 1:
                lb += 2 * max(k, 2) - 5
            elif k > 3:
                lb += 2 * (k - 3)
        return self.c.max_faces - lb

    def bounds(self, s, key):
        k, mask = s.ck[key], s.cm[key]
        room = self._slack(s) // 2
        if mask & 1:
            if k <= 3 and self._high(s) >= self.c.max_high_degree_boundary:
                return 2, min(3, max(k, 2) + room)
            return 2, max(k, 2) + room
        return 3, min(3 if self.c.interior_degree_exactly_3 else INF, max(k, 3) + room)

    def close(self, s, key, k, mask):
        if mask & 1:
            if k < 2:
                return False
            if k > 3:
                s.closed_high += 1
            s.closed_excess += 2 * k - 5
            return True
        if k < 3 or (self.c.interior_degree_exactly_3 and k != 3):
            return False
        s.closed_excess += 2 * (k - 3)
        return True

    def globally_ok(self, s):
        return (self._high(s) <= self.c.max_high_degree_boundary
                and self._slack(s) >= 0)


# -- primitive moves -----------------------------------------------------

def _attach(s: _State, rules: _Rules, h: int, i: int) -> bool:
    """Glue a fresh pentagon to side ``holes[h][i]``."""
    if s.n_tiles >= rules.max_tiles:
        return False
    hole = s.holes[h]
    ell = hole[i]
    prev = hole[i - 1]
    bit = 1 << s.n_tiles
    base = s.sizes + 5 * (s.n_tiles - 1)
    s.n_tiles += 1
    n0, n1, n2, n3, n4 = range(base, base + 5)
    s.alpha[ell], s.alpha[n0] = n0, ell
    s.ck[prev] += 1
    s.cm[prev] |= bit
    k, mask = s.ck.pop(ell), s.cm.pop(ell)
    s.ck[n4], s.cm[n4] = k + 1, mask | bit
    for d in (n1, n2, n3):
        s.ck[d], s.cm[d] = 1, bit
    if s.root == ell:
        s.root = n4
    if len(hole) == 1:
        hole[:] = [n1, n2, n3, n4]
    else:
        hole[i:i + 1] = [n1, n2, n3, n4]
    return True


def _merge_or_close(s: _State, rules: _Rules, a: int, b: int, key: int,
                    same: bool) -> bool:
    """Join corners keyed ``a`` and ``b`` into one keyed ``key``, or close ``a``."""
    ka, ma = s.ck.pop(a), s.cm.pop(a)
    root = s.root in (a, b)
    if same:
        if root:
            s.root = a          # close() recognises the root by its key
        return rules.close(s, a, ka, ma)
    kb, mb = s.ck.pop(b), s.cm.pop(b)
    if ma & mb:
        return False
    s.ck[key], s.cm[key] = ka + kb, ma | mb
    if root:
        s.root = key
    return True


def _glue(s: _State, rules: _Rules, h: int, i: int, j: int) -> bool:
    """Glue side ``holes[h][i]`` to side ``holes[h][j]`` (``i != j``)."""
    hole = s.holes[h]
    n = len(hole)
    ell, y = hole[i], hole[j]
    c = hole[i - 1]
    s.alpha[ell], s.alpha[y] = y, ell
    # X: sides strictly after ell up to y; Y: strictly after y up to ell
    X = [hole[(i + t) % n] for t in range(1, (j - i) % n)]
    Y = [hole[(j + t) % n] for t in range(1, (i - j) % n)]
    del s.holes[h]
    ok = _merge_or_close(s, rules, c, y, c, not Y)
    if ok:
        p = X[-1] if X else ell
        ok = _merge_or_close(s, rules, p if X else ell, ell, p, not X)
    if not ok:
        return False
    for part in (X, Y):
        if part:
            s.holes.append(part)
    return True


# -- forced tile closure ----------------------------------------------------

class Contradiction:
    """A same-side path that cannot bound part of a pentagon."""

    def __init__(self, reason: str):
        self.reason = reason

    def __repr__(self) -> str:
        return f"Contradiction({self.reason!r})"

    def __bool__(self) -> bool:
        return False


def _fill_run(s: _State, rules: _Rules, h: int, i: int) -> bool:
    """Glue one new pentagon along the five sides ``holes[h][i .. i+4]``."""
    if not _attach(s, rules, h, i):
        return False
    base = s.sizes + 5 * (s.n_tiles - 2)
    # the new sides n4, n3, n2, n1 are zipped in turn onto the run
    for side in (base + 4, base + 3, base + 2, base + 1):
        h = _hole_with(s, side)
        hole = s.holes[h]
        a = hole.index(side)
        if len(hole) < 2 or not _glue(s, rules, h, (a + 1) % len(hole), a):
            return False
    return True


def _hole_with(s: _State, side: int) -> int:
    for idx, hole in enumerate(s.holes):
        if side in hole:
            return idx
    raise KeyError(side)


def _close_run(s: _State, rules: _Rules, h: int, start: int, length: int):
    hole = s.holes[h]
    closed = length == len(hole)
    if length > 5:
        return Contradiction("more than five sides on one tile")
    if closed and length != 5:
        return Contradiction(f"closed path of length {length}")
    if length < 5:
        return None
    t = s.copy()
    if not _fill_run(t, rules, h, start):
        return Contradiction("closing tile violates simplicity or degrees")
    return t


class PartialTiling:
    """A partially glued tiling together with the degree rules it obeys.

    Build one with :meth:`polygon` (an empty m-gon under the disk-lemma
    constraints) or :meth:`from_disk` (the tiles of a disk, whose outer
    face becomes the hole, under sphere rules).
    """

    def __init__(self, state: _State, rules: _Rules):
        self._s = state
        self._rules = rules

    @classmethod
    def polygon(cls, m: int, max_faces: int, max_high_boundary: int = 1) -> "PartialTiling":
        c = DiskConstraints(m, max_high_boundary, True, max_faces)
        s = _initial(m, max_faces)
        s.root = -1
        return cls(s, _DiskRules(c))

    @classmethod
    def from_disk(cls, disk: DiskMap, max_faces: int) -> "PartialTiling":
        m = disk.map
        tiles = disk.tiles
        s = _initial(5, max_faces)
        s.root = -1
        new = {}
        for j, face in enumerate(tiles):
            if len(face) != 5:
                raise ValueError("every tile of the disk must be a pentagon")
            # reorder so that consecutive ids follow phi
            for t, d in enumerate(face):
                new[d] = 5 * j + t
        s.n_tiles = len(tiles)
        outer = set(disk.outer_face)
        for d, nd in new.items():
            s.alpha[nd] = -1 if m.alpha[d] in outer else new[m.alpha[d]]
        s.ck, s.cm = {}, {}
        next_side = {}
        for d in range(5 * len(tiles)):
            if s.alpha[d] != -1:
                continue
            x = _phi(s, d)
            k, mask = 1, 1 << _tile_of(s, x)
            while s.alpha[x] != -1:
                x = _phi(s, s.alpha[x])
                k += 1
                mask |= 1 << _tile_of(s, x)
            s.ck[d], s.cm[d] = k, mask
            next_side[d] = x
        start = min(next_side)
        hole = [start]
        while next_side[hole[-1]] != start:
            hole.append(next_side[hole[-1]])
        if len(hole) != len(next_side):
            raise ValueError("the disk boundary is not a single cycle")
        s.holes = [hole]
        closed = [len(orb) for orb in m.vertex_orbits
                  if m.vertex_of[orb[0]] not in {m.vertex_of[d] for d in outer}]
        s.closed_excess = sum(k - 3 for k in closed)
        s.closed_max = max(closed, default=0)
        return cls(s, _SphereRules(max_faces))

    @property
    def holes(self) -> list[list[int]]:
        return [h[:] for h in self._s.holes]

    @property
    def n_tiles(self) -> int:
        return self._s.n_tiles

    def corner(self, side: int) -> tuple[int, int, int]:
        """``(k, lo, hi)`` for the open corner after ``side``."""
        lo, hi = self._rules.bounds(self._s, side)
        return self._s.ck[side], lo, hi

    def same_side(self, side: int) -> bool:
        return _same_side(self._s, self._rules, side)

    @property
    def is_complete(self) -> bool:
        return not self._s.holes

    def to_map(self) -> SphericalMap:
        if not self.is_complete:
            raise ValueError("partial tiling still has open sides")
        return _finish(self._s)


def forced_tile_closure(partial: PartialTiling, hole: int, start: int, length: int):
    """Resolve a same-side path of ``length`` sides in hole ``hole``.

    The path starts at ``holes[hole][start]``.  Every corner strictly inside
    it must receive exactly one more tile, so all its sides lie on one new
    tile.  Returns the extended :class:`PartialTiling`, a
    :class:`Contradiction`, or None when a path shorter than five sides
    leaves the tile undetermined.
    """
    sides = partial._s.holes[hole]
    n = len(sides)
    if not 1 <= length <= n:
        raise ValueError("path length out of range")
    inner = [sides[(start + t) % n] for t in range(length if length == n else length - 1)]
    if not all(partial.same_side(c) for c in inner):
        raise ValueError("the path is not on the same side at every inner vertex")
    res = _close_run(partial._s, partial._rules, hole, start, length)
    if isinstance(res, _State):
        return PartialTiling(res, partial._rules)
    return res


def _same_side(s: _State, rules: _Rules, key: int) -> bool:
    lo, hi = rules.bounds(s, key)
    k = s.ck[key]
    return lo == hi == k + 1


def _apply_forced_closure(s: _State, rules: _Rules):
    """Find a decisive same-side run; returns a state, a Contradiction, or None."""
    for h, hole in enumerate(s.holes):
        n = len(hole)
        flags = [_same_side(s, rules, hole[i]) for i in range(n)]
        if all(flags):
            return _close_run(s, rules, h, 0, n)
        if sum(flags) < 4:
            continue
        # runs of sides joined by same-side corners; start after a free corner
        i0 = flags.index(False) + 1
        run_start, run = i0 % n, 1
        for t in range(n):
            i = (i0 + t) % n
            if flags[i]:
                run += 1
                continue
            if run >= 5:
                res = _close_run(s, rules, h, run_start, run)
                if res is not None:
                    return res
            run_start, run = (i + 1) % n, 1
    return None


# -- the search ----------------------------------------------------------

class _Budget:
    def __init__(self, max_nodes: int | None, max_seconds: float | None):
        if max_seconds is None and os.environ.get("PENTILE_BUDGET_SECS"):
            max_seconds = float(os.environ["PENTILE_BUDGET_SECS"])
        self.max_nodes = max_nodes
        self.deadline = None if max_seconds is None else time.monotonic() + max_seconds
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded(f"node limit {self.max_nodes} reached")
        if self.deadline is not None and self.nodes % 512 == 0 \
                and time.monotonic() > self.deadline:
            raise BudgetExceeded("wall-clock limit reached")


def _finish(s: _State) -> SphericalMap:
    n = s.sizes + 5 * (s.n_tiles - 1)
    alpha = s.alpha[:n]
    sigma = [_phi(s, alpha[d]) for d in range(n)]
    return SphericalMap(tuple(sigma), tuple(alpha), False)


def _is_canonical_root(m: SphericalMap, pairs) -> list[int] | None:
    """Listing at ``(0, False)`` when it is minimal among ``pairs``, else None."""
    ref = rooted_listing(m, 0, False)
    for r, refl in pairs:
        if r == 0 and not refl:
            continue
        lst = rooted_listing(m, r, refl, ref)
        if lst is not None and lst < ref:
            return None
    return ref


def _choose(s: _State, rules: _Rules):
    """Pick the corner to branch on; returns (hole, index) or a forced move."""
    if s.root >= 0:
        for h, hole in enumerate(s.holes):
            if s.root in hole:
                return "branch", h, (hole.index(s.root) + 1) % len(hole)
    best = None
    for h, hole in enumerate(s.holes):
        n = len(hole)
        for i in range(n):
            key = hole[i - 1]
            k = s.ck[key]
            lo, hi = rules.bounds(s, key)
            if k > hi or lo > hi:
                return "dead", h, i
            if k == hi:
                return "zip", h, i
            if best is None or k > best[0]:
                best = (k, h, i)
    return "branch", best[1], best[2]


def _children(s: _State, rules: _Rules, use_closure: bool) -> Iterable[_State]:
    if use_closure:
        res = _apply_forced_closure(s, rules)
        if isinstance(res, Contradiction):
            return
        if res is not None:
            if rules.globally_ok(res):
                yield res
            return
    kind, h, i = _choose(s, rules)
    if kind == "dead":
        return
    hole = s.holes[h]
    n = len(hole)
    c = hole[i - 1]
    if kind == "zip":
        if n == 1:
            return
        t = s.copy()
        if _glue(t, rules, h, i, (i - 1) % n) and rules.globally_ok(t):
            yield t
        return
    # close the corner, a fresh tile, or another side of the hole
    if n >= 2 and s.ck[c] >= rules.bounds(s, c)[0]:
        t = s.copy()
        if _glue(t, rules, h, i, (i - 1) % n) and rules.globally_ok(t):
            yield t
    t = s.copy()
    if _attach(t, rules, h, i) and rules.globally_ok(t):
        yield t
    for j in range(n):
        if j == i or j == (i - 1) % n:
            continue
        t = s.copy()
        if _glue(t, rules, h, i, j) and rules.globally_ok(t):
            yield t


def _run(start: _State, rules: _Rules, accept, use_closure: bool,
         budget: _Budget, out: list) -> None:
    stack = [start]
    while stack:
        s = stack.pop()
        budget.tick()
        if not s.holes:
            res = accept(s)
            if res is not None:
                out.append(res)
            continue
        kids = list(_children(s, rules, use_closure))
        stack.extend(reversed(kids))


def _split(start: _State, rules: _Rules, accept, use_closure: bool,
           target: int, out: list) -> list[_State]:
    """Expand the tree breadth-first until at least ``target`` open subtrees."""
    frontier = [start]
    while frontier and len(frontier) < target:
        nxt = []
        for s in frontier:
            if not s.holes:
                res = accept(s)
                if res is not None:
                    out.append(res)
                continue
            nxt.extend(_children(s, rules, use_closure))
        if not nxt:
            return []
        frontier = nxt
    return frontier


def _sphere_accept(s: _State):
    m = _finish(s)
    ref = _is_canonical_root(m, _root_pairs(m, True))
    if ref is None:
        return None
    return (m.F, CanonicalCode(_pack([m.V, m.E] + ref)), m)


def _disk_accept(s: _State):
    m = _finish(s)
    ref = _is_canonical_root(m, face_root_pairs(m, 0, True))
    if ref is None:
        return None
    return (m.F - 1, CanonicalCode(_pack([m.V, m.E] + ref)), DiskMap(m, 0))


def _worker(args):
    start, rules, kind, use_closure, max_nodes, max_seconds = args
    accept = _sphere_accept if kind == "sphere" else _disk_accept
    out: list = []
    budget = _Budget(max_nodes, max_seconds)
    _run(start, rules, accept, use_closure, budget, out)
    return out, budget.nodes


def _search(start: _State, rules: _Rules, kind: str, counts: dict[int, int],
            sink: Callable | None, use_closure: bool, workers: int,
            max_nodes: int | None, max_seconds: float | None) -> EnumerationReport:
    t0 = time.monotonic()
    accept = _sphere_accept if kind == "sphere" else _disk_accept
    found: list = []
    nodes = 0
    complete = True
    try:
        if workers <= 1:
            budget = _Budget(max_nodes, max_seconds)
            try:
                _run(start, rules, accept, use_closure, budget, found)
            finally:
                nodes = budget.nodes
        else:
            from concurrent.futures import ProcessPoolExecutor
            units = _split(start, rules, accept, use_closure, 8 * workers, found)
            jobs = [(u, rules, kind, use_closure, max_nodes, max_seconds) for u in units]
            with ProcessPoolExecutor(workers) as ex:
                for out, n in ex.map(_worker, jobs):
                    found.extend(out)
                    nodes += n
    except BudgetExceeded as exc:
        complete = False
        report = _assemble(found, counts, sink, time.monotonic() - t0, nodes, False)
        exc.report = report
        raise
    return _assemble(found, counts, sink, time.monotonic() - t0, nodes, complete)


def _assemble(found, counts, sink, elapsed, nodes, complete) -> EnumerationReport:
    found = sorted(found, key=lambda r: (r[0], r[1]))
    seen: set = set()
    rep = EnumerationReport(dict(counts), elapsed, nodes=nodes, complete=complete)
    for f, code, obj in found:
        if code in seen:
            continue  # cannot happen with canonical acceptance; kept as a guard
        seen.add(code)
        rep.counts[f] = rep.counts.get(f, 0) + 1
        rep.corpus.append(code)
        rep.maps.append(obj)
        if sink is not None:
            sink(obj)
    return rep


def enumerate_sphere(max_faces: int, sink: Callable[[SphericalMap], None] | None = None,
                     *, workers: int = 1, forced_closure: bool = True,
                     max_nodes: int | None = None,
                     max_seconds: float | None = None) -> EnumerationReport:
    """All pentagonal tilings of the sphere with at most ``max_faces`` tiles.

    One representative per isomorphism class (mirror images identified) is
    passed to ``sink`` in order of (face count, canonical code).
    """
    if max_faces < 12:
        raise ValueError("max_faces must be at least 12")
    rules = _SphereRules(max_faces)
    counts = {f: 0 for f in range(12, max_faces + 1, 2)}
    return _search(_initial(5, max_faces), rules, "sphere", counts, sink,
                   forced_closure, workers, max_nodes, max_seconds)


def enumerate_disk(constraints: DiskConstraints,
                   sink: Callable[[DiskMap], None] | None = None, *,
                   workers: int = 1, forced_closure: bool = True,
                   max_nodes: int | None = None,
                   max_seconds: float | None = None) -> EnumerationReport:
    """Pentagonal fillings of the ``m``-gon meeting ``constraints``.

    Counts are keyed by the number of pentagons.  Two fillings are the same
    when a map isomorphism, possibly reversing orientation, carries one
    boundary onto the other.
    """
    rules = _DiskRules(constraints)
    start = _initial(constraints.m, constraints.max_faces)
    start.root = -1
    return _search(start, rules, "disk", {}, sink, forced_closure, workers,
                   max_nodes, max_seconds)
