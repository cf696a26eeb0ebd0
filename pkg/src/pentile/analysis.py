"""Executable checks of the classification results over a corpus of tilings.

Family membership is always re-established through canonical codes, never
taken from how a map was produced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .generators import (FamilyTag, GeneratorError, disk_fixture, earth_map)
from .iso import CanonicalCode, canonical_code, face_rooted_code
from .maps import DiskMap, SphericalMap, distance_matrix, high_degree_vertices, bfs_distances


class ClassificationFailed(RuntimeError):
    """A two-pole tiling matched none of the earth-map families."""


@dataclass(frozen=True)
class NotEarthMap:
    high_degree_count: int

    def __str__(self) -> str:
        return f"not an earth map ({self.high_degree_count} vertices of degree > 3)"


@dataclass
class TheoremVerdict:
    """Outcome of one check.

    ``witnesses`` counts members that met the hypothesis and satisfied the
    conclusion; ``vacuous`` counts members outside the hypothesis.
    """

    theorem_id: str
    universe: str
    counterexamples: list[CanonicalCode] = field(default_factory=list)
    witnesses: int = 0
    vacuous: int = 0

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {"theorem": self.theorem_id, "universe": self.universe,
                "holds": self.holds, "witnesses": self.witnesses,
                "vacuous": self.vacuous,
                "counterexamples": [c.hex() for c in self.counterexamples]}


def check_one_high_degree(corpus: Iterable[SphericalMap],
                          universe: str = "given corpus") -> TheoremVerdict:
    v = TheoremVerdict("one-high-degree-vertex", universe)
    for m in corpus:
        n = len(high_degree_vertices(m))
        if n == 1:
            v.counterexamples.append(canonical_code(m))
        elif n == 0:
            v.vacuous += 1
        else:
            v.witnesses += 1
    return v


def _family_code(tag: FamilyTag) -> CanonicalCode | None:
    try:
        return canonical_code(earth_map(tag.distance, tag.timezones))
    except GeneratorError:
        return None


def classify_two_pole(m: SphericalMap) -> FamilyTag | NotEarthMap:
    """Earth-map family of a tiling with exactly two vertices of degree > 3."""
    poles = high_degree_vertices(m)
    if len(poles) != 2:
        return NotEarthMap(len(poles))
    d = distance_matrix(m, poles)[0][1]
    deg = {m.degrees[p] for p in poles}
    if len(deg) != 1:
        raise ClassificationFailed(f"pole degrees differ: {sorted(deg)}")
    per_zone = 4 if d == 5 else 12
    if not 1 <= d <= 5 or m.F % per_zone:
        raise ClassificationFailed(f"no family with distance {d} and {m.F} tiles")
    tag = FamilyTag(d, m.F // per_zone)
    if tag.pole_degree != deg.pop():
        raise ClassificationFailed(f"pole degree does not match {tag}")
    ref = _family_code(tag)
    if ref is None or ref != canonical_code(m):
        raise ClassificationFailed(f"tiling does not match {tag}")
    return tag


def _is_family(m: SphericalMap, distances: tuple[int, ...]) -> bool:
    code = None
    for d in distances:
        per_zone = 4 if d == 5 else 12
        if m.F % per_zone:
            continue
        ref = _family_code(FamilyTag(d, m.F // per_zone))
        if ref is None:
            continue
        code = code or canonical_code(m)
        if ref == code:
            return True
    return False


def _isolated_to_radius(m: SphericalMap, v: int, radius: int) -> bool:
    dist = bfs_distances(m, v)
    return all(m.degrees[u] == 3 for u, x in enumerate(dist) if 0 < x <= radius)


def check_distance5(corpus: Iterable[SphericalMap],
                    universe: str = "given corpus") -> TheoremVerdict:
    """A high-degree vertex with only degree-3 vertices within distance 4
    forces the distance-5 earth map."""
    v = TheoremVerdict("distance-5", universe)
    for m in corpus:
        hit = any(_isolated_to_radius(m, p, 4) for p in high_degree_vertices(m))
        if not hit:
            v.vacuous += 1
        elif _is_family(m, (5,)):
            v.witnesses += 1
        else:
            v.counterexamples.append(canonical_code(m))
    return v


def check_distance4(corpus: Iterable[SphericalMap],
                    universe: str = "given corpus") -> TheoremVerdict:
    """High-degree vertices pairwise at distance >= 4 force the distance-5
    or distance-4 earth map."""
    v = TheoremVerdict("distance-4", universe)
    for m in corpus:
        highs = high_degree_vertices(m)
        if len(highs) < 2:
            v.vacuous += 1
            continue
        dm = distance_matrix(m, highs)
        far = all(dm[i][j] >= 4 for i in range(len(highs)) for j in range(i))
        if not far:
            v.vacuous += 1
        elif _is_family(m, (5, 4)):
            v.witnesses += 1
        else:
            v.counterexamples.append(canonical_code(m))
    return v


def disk_code(disk: DiskMap) -> CanonicalCode:
    """Code of a disk filling up to maps fixing the outer face."""
    return face_rooted_code(disk.map, disk.outer)


def check_lemma_cycle(fillings: Mapping[int, Iterable[DiskMap]],
                      universe: str = "m <= 7") -> TheoremVerdict:
    """Fillings found per boundary length ``m``; only two exist for m <= 7.

    Unexpected fillings, and expected ones that are missing, are both
    listed as counterexamples.
    """
    v = TheoremVerdict("cycle", universe)
    expected = {disk_code(disk_fixture("single_pentagon")),
                disk_code(disk_fixture("dodeca_minus_tile"))}
    found_at_5: set = set()
    for m, disks in sorted(fillings.items()):
        for disk in disks:
            code = disk_code(disk)
            if m == 5 and code in expected:
                found_at_5.add(code)
                v.witnesses += 1
            elif m <= 7:
                v.counterexamples.append(code)
    if 5 in fillings:
        v.counterexamples.extend(sorted(expected - found_at_5))
    return v
