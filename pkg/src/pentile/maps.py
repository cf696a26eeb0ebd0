"""Dart-based combinatorial maps on the sphere.

A map is stored as two permutations of the darts ``0 .. 2E-1``:

* ``sigma[d]`` is the next dart counterclockwise around the origin of ``d``;
* ``alpha[d]`` is the other half of the edge of ``d``.

The face permutation is ``phi(d) = sigma(alpha(d))``.  With ``sigma``
counterclockwise this walks every face with the face on its right, i.e.
clockwise.  Vertices, edges and faces are the orbits of ``sigma``, ``alpha``
and ``phi``; each orbit is named by the smallest dart it contains.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class MapError(ValueError):
    """Raised when rotation data does not describe a connected sphere map."""


class NonInvolutivePairing(MapError):
    pass


class DuplicateDart(MapError):
    pass


class Disconnected(MapError):
    pass


class NonZeroGenus(MapError):
    pass


class VertexOutOfRange(IndexError):
    pass


def _orbits(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(cyc)
    return out


@dataclass(frozen=True, eq=False)
class SphericalMap:
    """Immutable rotation system of a connected graph embedded in the sphere.

    Construct through :meth:`from_rotations` (checked) or
    :meth:`from_permutations`.  Multi-edges, loops and degree-2 vertices
    are representable; :func:`validate_pentagonal` decides whether the map
    is a pentagonal tiling.
    """

    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    _check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self._check:
            _check_structure(self.sigma, self.alpha)

    # -- construction -------------------------------------------------
    @classmethod
    def from_permutations(cls, sigma: Sequence[int], alpha: Sequence[int],
                          check: bool = True) -> "SphericalMap":
        return cls(tuple(sigma), tuple(alpha), check)

    @classmethod
    def from_rotations(cls, neighbor_lists: Sequence[Sequence[int]],
                       pairing: Mapping[int, int] | Sequence[int]) -> "SphericalMap":
        return build_from_rotations(neighbor_lists, pairing)

    # -- derived permutations and orbits ------------------------------
    @property
    def n_darts(self) -> int:
        return len(self.sigma)

    @cached_property
    def phi(self) -> tuple[int, ...]:
        s, a = self.sigma, self.alpha
        return tuple(s[a[d]] for d in range(len(s)))

    @cached_property
    def sigma_inv(self) -> tuple[int, ...]:
        inv = [0] * len(self.sigma)
        for d, e in enumerate(self.sigma):
            inv[e] = d
        return tuple(inv)

    @cached_property
    def vertex_orbits(self) -> list[list[int]]:
        return _orbits(self.sigma)

    @cached_property
    def face_orbits(self) -> list[list[int]]:
        return _orbits(self.phi)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        """Vertex id (smallest dart of the sigma-orbit) of every dart."""
        return _label(self.vertex_orbits, self.n_darts)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        return _label(self.face_orbits, self.n_darts)

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        return tuple(min(d, self.alpha[d]) for d in range(self.n_darts))

    @cached_property
    def vertex_index(self) -> dict[int, int]:
        """Map vertex id -> position in :attr:`vertices` (0 .. V-1)."""
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def vertices(self) -> list[int]:
        return [orb[0] for orb in self.vertex_orbits]

    @property
    def V(self) -> int:
        return len(self.vertex_orbits)

    @property
    def E(self) -> int:
        return self.n_darts // 2

    @property
    def F(self) -> int:
        return len(self.face_orbits)

    def degree(self, v: int) -> int:
        """Degree of the vertex with position ``v`` in :attr:`vertices`."""
        return len(self.vertex_orbits[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.vertex_orbits)

    def origin(self, d: int) -> int:
        """Vertex position (0 .. V-1) of the origin of dart ``d``."""
        return self.vertex_index[self.vertex_of[d]]

    def head(self, d: int) -> int:
        return self.origin(self.alpha[d])

    @cached_property
    def adjacency(self) -> list[list[int]]:
        """Neighbor positions of each vertex in rotation order (with repeats)."""
        return [[self.head(d) for d in orb] for orb in self.vertex_orbits]

    def face_vertices(self, face: Sequence[int]) -> list[int]:
        return [self.origin(d) for d in face]

    def mirror(self) -> "SphericalMap":
        """The same graph with every rotation reversed."""
        return SphericalMap(self.sigma_inv, self.alpha, False)

    def relabel(self, perm: Sequence[int]) -> "SphericalMap":
        """Rename dart ``d`` to ``perm[d]``."""
        n = self.n_darts
        sigma = [0] * n
        alpha = [0] * n
        for d in range(n):
            sigma[perm[d]] = perm[self.sigma[d]]
            alpha[perm[d]] = perm[self.alpha[d]]
        return SphericalMap(tuple(sigma), tuple(alpha), False)

    def rotation_lists(self) -> list[list[int]]:
        """Per-vertex counterclockwise dart lists (the file representation)."""
        return [list(o) for o in self.vertex_orbits]

    def __repr__(self) -> str:
        return f"SphericalMap(V={self.V}, E={self.E}, F={self.F})"


def _label(orbits: list[list[int]], n: int) -> tuple[int, ...]:
    lab = [0] * n
    for orb in orbits:
        m = orb[0]
        for d in orb:
            lab[d] = m
    return tuple(lab)


def _check_structure(sigma: Sequence[int], alpha: Sequence[int]) -> None:
    n = len(sigma)
    if len(alpha) != n:
        raise MapError("sigma and alpha have different lengths")
    if n == 0:
        raise Disconnected("a map needs at least one edge")
    if sorted(sigma) != list(range(n)):
        raise DuplicateDart("sigma is not a permutation of the darts")
    for d in range(n):
        a = alpha[d]
        if not 0 <= a < n or a == d or alpha[a] != d:
            raise NonInvolutivePairing(
                f"alpha must be a fixed-point-free involution (dart {d})")
    # connectivity under <sigma, alpha>
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        d = stack.pop()
        for e in (sigma[d], alpha[d]):
            if not seen[e]:
                seen[e] = True
                stack.append(e)
    if not all(seen):
        raise Disconnected("darts do not form one connected map")
    phi = [sigma[alpha[d]] for d in range(n)]
    chi = len(_orbits(sigma)) - n // 2 + len(_orbits(phi))
    if chi != 2:
        raise NonZeroGenus(f"Euler characteristic is {chi}, expected 2")


def build_from_rotations(neighbor_lists: Sequence[Sequence[int]],
                         pairing: Mapping[int, int] | Sequence[int]) -> SphericalMap:
    """Build a map from per-vertex ccw dart lists and the edge pairing."""
    darts = [d for lst in neighbor_lists for d in lst]
    n = len(darts)
    if len(set(darts)) != n:
        raise DuplicateDart("a dart appears more than once in the rotations")
    if set(darts) != set(range(n)):
        raise DuplicateDart("dart ids must be exactly 0 .. 2E-1")
    if isinstance(pairing, Mapping):
        if set(pairing) != set(range(n)):
            raise NonInvolutivePairing("pairing must cover every dart")
        alpha = [pairing[d] for d in range(n)]
    else:
        alpha = list(pairing)
        if len(alpha) != n:
            raise NonInvolutivePairing("pairing must cover every dart")
    sigma = [0] * n
    for lst in neighbor_lists:
        if not lst:
            raise MapError("isolated vertex")
        for i, d in enumerate(lst):
            sigma[d] = lst[(i + 1) % len(lst)]
    return SphericalMap(tuple(sigma), tuple(alpha))


def from_faces(faces: Sequence[Sequence[object]]) -> SphericalMap:
    """Build a map from counterclockwise vertex cycles of its faces.

    Every directed edge ``u -> v`` must occur in exactly one face, so the
    underlying graph cannot have parallel edges.  Vertices may be any
    hashable labels.
    """
    dart_of: dict[tuple, int] = {}
    for f in faces:
        k = len(f)
        for i in range(k):
            key = (f[i], f[(i + 1) % k])
            if key in dart_of:
                raise DuplicateDart(f"directed edge {key} used twice")
            dart_of[key] = len(dart_of)
    n = len(dart_of)
    alpha = [0] * n
    for (u, v), d in dart_of.items():
        if (v, u) not in dart_of:
            raise NonInvolutivePairing(f"edge {(u, v)} has no reverse")
        alpha[d] = dart_of[(v, u)]
    sigma = [0] * n
    for f in faces:
        k = len(f)
        for i in range(k):
            u, v, w = f[i - 1], f[i], f[(i + 1) % k]
            # the face sits left of v->w; turning ccw from v->w crosses it to v->u
            sigma[dart_of[(v, w)]] = dart_of[(v, u)]
    return SphericalMap(tuple(sigma), tuple(alpha))


# -- validation ---------------------------------------------------------

@dataclass
class ValidationReport:
    violations: list[tuple[str, object]] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.is_valid

    def rules(self) -> set[str]:
        return {r for r, _ in self.violations}


def _face_violations(m: SphericalMap, face: Sequence[int], rep: ValidationReport) -> None:
    if len(face) != 5:
        rep.violations.append(("face-length-5", face[0]))
        return
    if len({m.vertex_of[d] for d in face}) != 5:
        rep.violations.append(("face-simple-vertices", face[0]))
    if len({m.edge_of[d] for d in face}) != 5:
        rep.violations.append(("face-simple-edges", face[0]))


def validate_pentagonal(m: SphericalMap) -> ValidationReport:
    """Check that every face is a simple 5-cycle and every vertex has degree >= 3."""
    rep = ValidationReport()
    for face in m.face_orbits:
        _face_violations(m, face, rep)
    for orb in m.vertex_orbits:
        if len(orb) < 3:
            rep.violations.append(("vertex-degree-3", orb[0]))
    return rep


def degree_histogram(m: SphericalMap) -> dict[int, int]:
    return dict(sorted(Counter(m.degrees).items()))


def check_counting_identities(m: SphericalMap) -> bool:
    """v3 = 20 + sum (3i-10) v_i and F = 12 + 2 sum (i-3) v_i over i >= 4."""
    hist = degree_histogram(m)
    high = {i: c for i, c in hist.items() if i >= 4}
    v3 = hist.get(3, 0)
    ok_v3 = v3 == 20 + sum((3 * i - 10) * c for i, c in high.items())
    ok_f = m.F == 12 + 2 * sum((i - 3) * c for i, c in high.items())
    return ok_v3 and ok_f


def high_degree_vertices(m: SphericalMap) -> list[int]:
    return [v for v, k in enumerate(m.degrees) if k > 3]


def bfs_distances(m: SphericalMap, source: int) -> list[int]:
    """Edge distances from vertex position ``source`` (-1 if unreachable)."""
    if not 0 <= source < m.V:
        raise VertexOutOfRange(source)
    adj = m.adjacency
    dist = [-1] * m.V
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def graph_distance(m: SphericalMap, u: int, v: int) -> int:
    if not 0 <= v < m.V:
        raise VertexOutOfRange(v)
    return bfs_distances(m, u)[v]


def distance_matrix(m: SphericalMap, vertices: Iterable[int]) -> list[list[int]]:
    vs = list(vertices)
    rows = []
    for u in vs:
        dist = bfs_distances(m, u)
        rows.append([dist[v] for v in vs])
    return rows


# -- disks ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DiskMap:
    """A sphere map with one distinguished face, the complement of the disk.

    ``outer`` is the face id (smallest dart of the face orbit).
    """

    map: SphericalMap
    outer: int

    @property
    def outer_face(self) -> list[int]:
        for orb in self.map.face_orbits:
            if orb[0] == self.outer:
                return orb
        raise KeyError(self.outer)

    @property
    def boundary_length(self) -> int:
        return len(self.outer_face)

    @property
    def tiles(self) -> list[list[int]]:
        return [f for f in self.map.face_orbits if f[0] != self.outer]

    @property
    def boundary_vertices(self) -> list[int]:
        return [self.map.origin(d) for d in self.outer_face]

    def interior_vertices(self) -> list[int]:
        bd = set(self.boundary_vertices)
        return [v for v in range(self.map.V) if v not in bd]

    def mirror(self) -> "DiskMap":
        m = self.map.mirror()
        return DiskMap(m, m.face_of[self.map.alpha[self.outer]])

    def __repr__(self) -> str:
        return f"DiskMap(m={self.boundary_length}, tiles={len(self.tiles)})"


def validate_disk(disk: DiskMap) -> ValidationReport:
    m = disk.map
    rep = ValidationReport()
    outer = disk.outer_face
    if len({m.vertex_of[d] for d in outer}) != len(outer):
        rep.violations.append(("boundary-simple", outer[0]))
    for face in disk.tiles:
        _face_violations(m, face, rep)
    bd = set(disk.boundary_vertices)
    for v, k in enumerate(m.degrees):
        if k < (2 if v in bd else 3):
            rep.violations.append(("vertex-degree", m.vertices[v]))
    return rep
