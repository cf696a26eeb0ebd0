"""Combinatorial pentagonal tilings of the sphere and of disks."""

from .maps import (DiskMap, SphericalMap, ValidationReport, build_from_rotations,
                   check_counting_identities, degree_histogram, graph_distance,
                   high_degree_vertices, validate_disk, validate_pentagonal)
from .iso import canonical_code, isomorphic, isomorphic_by_matching
from .generators import (FamilyTag, connected_sum, disk_fixture, dodecahedron,
                         earth_map, earth_map_via_meridian_3prime, three_v4_example)

__all__ = [
    "DiskMap", "SphericalMap", "ValidationReport", "build_from_rotations",
    "check_counting_identities", "degree_histogram", "graph_distance",
    "high_degree_vertices", "validate_disk", "validate_pentagonal",
    "canonical_code", "isomorphic", "isomorphic_by_matching",
    "FamilyTag", "connected_sum", "disk_fixture", "dodecahedron", "earth_map",
    "earth_map_via_meridian_3prime", "three_v4_example",
]
