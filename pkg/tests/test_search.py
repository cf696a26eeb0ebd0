import pytest

from pentile.generators import disk_fixture, dodecahedron, earth_map, three_v4_example
from pentile.iso import canonical_code, face_rooted_code, isomorphic
from pentile.maps import (check_counting_identities, high_degree_vertices,
                          validate_disk, validate_pentagonal)
from pentile.naive import enumerate_sphere_naive
from pentile.search import (BudgetExceeded, Contradiction, DiskConstraints, PartialTiling,
                            enumerate_disk, enumerate_sphere, forced_tile_closure)


def test_census_small():
    assert enumerate_sphere(12).counts == {12: 1}
    assert enumerate_sphere(14).counts == {12: 1, 14: 0}


def test_census_to_18(corpus18):
    assert corpus18.counts == {12: 1, 14: 0, 16: 1, 18: 1}
    assert corpus18.complete
    m12, m16, m18 = corpus18.maps
    assert isomorphic(m12, dodecahedron())
    assert isomorphic(m16, earth_map(5, 4))
    assert isomorphic(m18, three_v4_example())


def test_corpus_members_are_valid_and_distinct(corpus18):
    assert len(set(corpus18.corpus)) == len(corpus18.corpus)
    for m, code in zip(corpus18.maps, corpus18.corpus):
        assert validate_pentagonal(m)
        assert check_counting_identities(m)
        assert m.F % 2 == 0
        assert len(high_degree_vertices(m)) != 1
        assert canonical_code(m) == code


def test_sink_receives_representatives_in_order():
    got = []
    rep = enumerate_sphere(16, got.append)
    assert [m.F for m in got] == [12, 16]
    assert [canonical_code(m) for m in got] == rep.corpus


def test_naive_oracle_small():
    assert enumerate_sphere_naive(12).counts == {12: 1}
    assert enumerate_sphere_naive(14).counts == {12: 1, 14: 0}
    assert enumerate_sphere_naive(14).corpus == enumerate_sphere(14).corpus


def test_pruning_never_changes_counts():
    a = enumerate_sphere(18, forced_closure=True)
    b = enumerate_sphere(18, forced_closure=False)
    assert a.corpus == b.corpus
    assert a.nodes < b.nodes


def test_determinism_and_workers():
    a = enumerate_sphere(18)
    b = enumerate_sphere(18)
    c = enumerate_sphere(18, workers=2)
    assert a.corpus == b.corpus == c.corpus
    assert a.nodes == b.nodes


def test_budget_exceeded_flags_partial_results():
    with pytest.raises(BudgetExceeded) as info:
        enumerate_sphere(20, max_nodes=500)
    assert info.value.report is not None
    assert not info.value.report.complete


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("PENTILE_BUDGET_SECS", "0")
    with pytest.raises(BudgetExceeded):
        enumerate_sphere(20)


def test_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_sphere(10)
    with pytest.raises(ValueError):
        DiskConstraints(1)
    with pytest.raises(ValueError):
        DiskConstraints(5, max_faces=0)


def _disk_codes(rep):
    return {face_rooted_code(d.map, d.outer) for d in rep.maps}


def test_disk_m5():
    rep = enumerate_disk(DiskConstraints(5, 1, True, 15))
    assert rep.counts == {1: 1, 11: 1}
    want = {face_rooted_code(disk_fixture(k).map, disk_fixture(k).outer)
            for k in ("single_pentagon", "dodeca_minus_tile")}
    assert _disk_codes(rep) == want
    for d in rep.maps:
        assert validate_disk(d)


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_disk_no_fillings(m):
    assert enumerate_disk(DiskConstraints(m, 1, True, 15)).counts == {}


def test_disk_m7_slit_filling():
    rep = enumerate_disk(DiskConstraints(7, 1, True, 15))
    slit = disk_fixture("dodeca_minus_tile_slit")
    assert rep.counts == {11: 1}
    assert _disk_codes(rep) == {face_rooted_code(slit.map, slit.outer)}


def test_disk_m8_contains_figure_fixture():
    rep = enumerate_disk(DiskConstraints(8, 1, True, 12))
    eight = disk_fixture("8gon")
    assert face_rooted_code(eight.map, eight.outer) in _disk_codes(rep)


def test_disk_high_boundary_limit_matters():
    assert enumerate_disk(DiskConstraints(7, 0, True, 15)).counts == {}


def test_disk_interior_relaxation_finds_tile_complements():
    # removing any tile of the 16-tile earth map leaves a 15-tile filling of
    # the pentagon with a degree-4 interior vertex
    rep = enumerate_disk(DiskConstraints(5, 1, False, 15))
    codes = _disk_codes(rep)
    e = earth_map(5, 4)
    assert all(face_rooted_code(e, f[0]) in codes for f in e.face_orbits)
    assert rep.counts[1] == 1 and rep.counts[11] == 1
    for d in rep.maps:
        assert validate_disk(d)


# -- forced tile closure -------------------------------------------------

def test_closure_closed_triangle_is_contradiction():
    p = PartialTiling.polygon(3, 3)
    assert all(p.same_side(c) for c in p.holes[0])
    res = forced_tile_closure(p, 0, 0, 3)
    assert isinstance(res, Contradiction)


def test_closure_closed_pentagon_is_one_tile():
    p = PartialTiling.polygon(5, 1)
    res = forced_tile_closure(p, 0, 0, 5)
    assert isinstance(res, PartialTiling) and res.is_complete
    assert res.to_map().F == 2


def test_closure_six_path_is_contradiction():
    p = PartialTiling.polygon(6, 1)
    assert isinstance(forced_tile_closure(p, 0, 0, 6), Contradiction)


def test_closure_restores_dodecahedron():
    p = PartialTiling.from_disk(disk_fixture("dodeca_minus_tile"), 12)
    res = forced_tile_closure(p, 0, 0, 5)
    assert isomorphic(res.to_map(), dodecahedron())


def test_closure_open_run_on_slit_disk():
    p = PartialTiling.from_disk(disk_fixture("dodeca_minus_tile_slit"), 12)
    hole = p.holes[0]
    flags = [p.same_side(c) for c in hole]
    assert sum(flags) == 4
    start = next(i for i in range(7) if flags[i] and not flags[i - 1])
    res = forced_tile_closure(p, 0, start, 5)
    assert isinstance(res, PartialTiling) and res.n_tiles == 12
    assert forced_tile_closure(p, 0, start, 3) is None


def test_closure_rejects_non_same_side_path():
    p = PartialTiling.polygon(7, 3)
    with pytest.raises(ValueError):
        forced_tile_closure(p, 0, 0, 3)
