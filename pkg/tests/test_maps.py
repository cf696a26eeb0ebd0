import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pentile.generators import dodecahedron, earth_map, three_v4_example
from pentile.maps import (DiskMap, Disconnected, DuplicateDart, NonInvolutivePairing,
                          NonZeroGenus, SphericalMap, VertexOutOfRange, bfs_distances,
                          build_from_rotations, check_counting_identities,
                          degree_histogram, distance_matrix, from_faces, graph_distance,
                          high_degree_vertices, validate_disk, validate_pentagonal)

from conftest import random_relabel


def tetrahedron():
    return from_faces([[0, 1, 2], [0, 3, 1], [1, 3, 2], [2, 3, 0]])


def test_dodecahedron_counts():
    m = dodecahedron()
    assert (m.V, m.E, m.F) == (20, 30, 12)
    assert sorted(len(f) for f in m.face_orbits) == [5] * 12
    assert degree_histogram(m) == {3: 20}


def test_dodecahedron_from_rotation_lists_round_trip():
    m = dodecahedron()
    again = build_from_rotations(m.rotation_lists(), list(m.alpha))
    assert again.sigma == m.sigma and again.alpha == m.alpha


def test_tetrahedron_is_a_map_but_not_pentagonal():
    m = tetrahedron()
    assert (m.V, m.E, m.F) == (4, 6, 4)
    assert sorted(len(f) for f in m.face_orbits) == [3, 3, 3, 3]
    rep = validate_pentagonal(m)
    assert not rep
    assert rep.rules() == {"face-length-5"}
    assert sum(r == "face-length-5" for r, _ in rep.violations) == 4


def test_single_loop_is_a_sphere_map_but_invalid():
    # one vertex, one loop: V - E + F = 1 - 1 + 2, so the builder accepts it
    m = build_from_rotations([[0, 1]], [1, 0])
    assert (m.V, m.E, m.F) == (1, 1, 2)
    assert not validate_pentagonal(m)


def test_builder_errors():
    with pytest.raises(NonInvolutivePairing):
        build_from_rotations([[0, 1]], [0, 1])
    with pytest.raises(DuplicateDart):
        build_from_rotations([[0, 0]], [1, 0])
    with pytest.raises(Disconnected):
        build_from_rotations([[0], [1], [2], [3]], [1, 0, 3, 2])
    # a single vertex with two crossing loops lives on the torus
    with pytest.raises(NonZeroGenus):
        build_from_rotations([[0, 1, 2, 3]], [2, 3, 0, 1])


def test_phi_convention():
    m = dodecahedron()
    assert all(m.phi[d] == m.sigma[m.alpha[d]] for d in range(m.n_darts))
    assert all(m.alpha[m.alpha[d]] == d for d in range(m.n_darts))


def test_orbit_ids_are_minimal_darts():
    m = earth_map(5, 4)
    for orb in m.vertex_orbits:
        assert all(m.vertex_of[d] == min(orb) for d in orb)
    for orb in m.face_orbits:
        assert all(m.face_of[d] == min(orb) for d in orb)


def test_histograms_and_identities():
    assert degree_histogram(earth_map(5, 4)) == {3: 24, 4: 2}
    # v3 forced to 26 by the identities when v4 = 3 and F = 18
    assert degree_histogram(three_v4_example()) == {3: 26, 4: 3}
    for m in (dodecahedron(), earth_map(5, 4), three_v4_example(), earth_map(4, 2)):
        assert check_counting_identities(m)


def test_identity_check_detects_wrong_histogram():
    assert not check_counting_identities(tetrahedron())


def test_distances():
    m = dodecahedron()
    dm = distance_matrix(m, range(m.V))
    assert max(map(max, dm)) == 5
    # each vertex of the dodecahedron has exactly one antipode
    assert all(row.count(5) == 1 for row in dm)
    assert graph_distance(m, 3, 3) == 0
    with pytest.raises(VertexOutOfRange):
        bfs_distances(m, 20)


def test_pole_distance_of_distance_4_family():
    m = earth_map(4, 3)
    p, q = high_degree_vertices(m)
    assert graph_distance(m, p, q) == 4


def test_high_degree_vertices():
    assert high_degree_vertices(dodecahedron()) == []
    m = earth_map(2, 3)
    hv = high_degree_vertices(m)
    assert len(hv) == 2 and all(m.degrees[v] == 9 for v in hv)
    assert len(high_degree_vertices(three_v4_example())) == 3


@pytest.mark.parametrize("m", [dodecahedron(), three_v4_example(), earth_map(1, 2)])
def test_distance_is_a_metric(m):
    dm = distance_matrix(m, range(m.V))
    n = m.V
    for u in range(n):
        assert dm[u][u] == 0
        for v in range(n):
            assert dm[u][v] == dm[v][u]
            assert (dm[u][v] == 0) == (u == v)
    for u, v, w in itertools.product(range(n), repeat=3):
        assert dm[u][w] <= dm[u][v] + dm[v][w]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["dodeca", "v4", "e3"]))
def test_validation_is_relabel_invariant(seed, which):
    m = {"dodeca": dodecahedron, "v4": three_v4_example, "e3": lambda: earth_map(3, 2)}[which]()
    r = random_relabel(m, random.Random(seed))
    assert validate_pentagonal(r).is_valid
    assert degree_histogram(r) == degree_histogram(m)
    assert (r.V, r.E, r.F) == (m.V, m.E, m.F)


def test_loop_and_parallel_faces_are_flagged():
    # two faces of length 5 bounded by one 5-cycle: vertices of degree 2
    m = from_faces([[0, 1, 2, 3, 4], [4, 3, 2, 1, 0]])
    assert validate_pentagonal(m).rules() == {"vertex-degree-3"}


def test_disk_validation():
    m = from_faces([[0, 1, 2, 3, 4], [4, 3, 2, 1, 0]])
    disk = DiskMap(m, 0)
    assert validate_disk(disk)
    assert disk.boundary_length == 5 and len(disk.tiles) == 1
    assert disk.interior_vertices() == []


def test_mirror_keeps_counts_and_swaps_rotation():
    m = earth_map(3, 2)
    r = m.mirror()
    assert (r.V, r.E, r.F) == (m.V, m.E, m.F)
    assert all(r.sigma[m.sigma[d]] == d for d in range(m.n_darts))


def test_unchecked_construction_skips_checks():
    SphericalMap((0, 1), (0, 1), False)  # no error without checking
