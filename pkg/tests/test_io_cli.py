import io as pyio
import json
import sys

import pytest

from pentile import io
from pentile.cli import main
from pentile.generators import disk_fixture, dodecahedron, earth_map, three_v4_example
from pentile.iso import canonical_code, face_rooted_code
from pentile.maps import DiskMap


def _same(a, b):
    return a.sigma == b.sigma and a.alpha == b.alpha


@pytest.mark.parametrize("m", [dodecahedron(), three_v4_example(), earth_map(3, 2)])
def test_json_round_trip_is_dart_exact(m):
    back = io.loads(io.dumps(m, {"note": "x"}))
    assert _same(back, m)


def test_json_disk_round_trip():
    disk = disk_fixture("9gon")
    back = io.loads(io.dumps(disk))
    assert isinstance(back, DiskMap)
    assert _same(back.map, disk.map) and back.outer == disk.outer


def test_json_rejects_bad_files():
    with pytest.raises(ValueError):
        io.from_dict({"version": 99, "vertices": [], "pairing": []})
    with pytest.raises(ValueError):
        io.from_dict({"version": 1, "vertices": [[0, 0]], "pairing": [1, 0]})


def test_planar_code_round_trip_and_concatenation(corpus18):
    buf1, buf2 = pyio.BytesIO(), pyio.BytesIO()
    io.write_planar_code(corpus18.maps[:2], buf1)
    io.write_planar_code(corpus18.maps[2:], buf2)
    back = list(io.read_planar_code(buf1.getvalue() + buf2.getvalue()))
    assert len(back) == len(corpus18.maps)
    for a, b in zip(back, corpus18.maps):
        assert _same(a, b)


def test_dot_counts():
    m = three_v4_example()
    dot = io.to_dot(m)
    assert sum(" -- " in line for line in dot.splitlines()) == m.E
    assert sum("[label=" in line for line in dot.splitlines()) == m.V


def test_canonical_form_is_idempotent_and_keeps_disk_outer():
    m = earth_map(3, 2)
    c = io.canonical_form(m)
    assert _same(io.canonical_form(c), c)
    assert canonical_code(c) == canonical_code(m)
    disk = disk_fixture("dodeca_minus_tile_slit")
    cd = io.canonical_form(disk)
    assert face_rooted_code(cd.map, cd.outer) == face_rooted_code(disk.map, disk.outer)
    assert cd.boundary_length == 7


# -- CLI --------------------------------------------------------------------

def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", pyio.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_then_verify(capsys, monkeypatch):
    code, text, _ = run(["generate", "earthmap", "--distance", "5", "--timezones", "4"], capsys)
    assert code == 0
    code, out, _ = run(["verify", "-"], capsys, text, monkeypatch)
    assert code == 0 and "valid" in out


def test_generate_is_byte_identical(capsys):
    a = run(["generate", "earthmap", "-d", "3", "-t", "3"], capsys)[1]
    b = run(["generate", "earthmap", "-d", "3", "-t", "3"], capsys)[1]
    assert a == b


def test_isom_exit_codes(tmp_path, capsys):
    p2, p3, p2b = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    assert main(["generate", "earthmap", "-d", "2", "-t", "3", "-o", str(p2)]) == 0
    assert main(["generate", "earthmap", "-d", "3", "-t", "3", "-o", str(p3)]) == 0
    assert main(["generate", "earthmap", "-d", "2", "-t", "3", "--raw", "-o", str(p2b)]) == 0
    capsys.readouterr()
    assert run(["isom", str(p2), str(p3)], capsys)[0] == 1
    assert run(["isom", str(p2), str(p2b)], capsys)[0] == 0
    code, out, _ = run(["isom", str(p2), str(p2b), "--chiral", "--json"], capsys)
    assert code == 0 and json.loads(out) == {"isomorphic": True}


def test_verify_rejects_invalid(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    # tetrahedron
    bad.write_text(json.dumps({"version": 1, "metadata": {},
                               "vertices": [[0, 2, 4], [1, 6, 8], [3, 9, 10], [5, 11, 7]],
                               "pairing": [1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10]}))
    code, out, _ = run(["verify", str(bad), "--json"], capsys)
    assert code == 1


def test_unreadable_file_is_reported(tmp_path, capsys):
    p = tmp_path / "junk.json"
    p.write_text("not json")
    assert run(["verify", str(p)], capsys)[0] == 1
    assert run(["verify", str(tmp_path / "missing.json")], capsys)[0] == 2


def test_enumerate_table_and_json(capsys):
    code, out, _ = run(["enumerate", "--max-faces", "14"], capsys)
    assert code == 0
    assert "12\t1" in out and "14\t0" in out
    code, out, _ = run(["enumerate", "--max-faces", "16", "--json"], capsys)
    assert json.loads(out)["counts"] == {"12": 1, "14": 0, "16": 1}


def test_enumerate_naive_and_disk(capsys):
    code, out, _ = run(["enumerate", "--max-faces", "12", "--naive"], capsys)
    assert code == 0 and "12\t1" in out
    code, out, _ = run(["enumerate", "--disk", "--boundary", "5", "--max-faces", "11", "--json"],
                       capsys)
    assert json.loads(out)["counts"] == {"1": 1, "11": 1}


def test_enumerate_output_stream(tmp_path, capsys):
    out = tmp_path / "c.pc"
    assert run(["enumerate", "--max-faces", "16", "--output", str(out)], capsys)[0] == 0
    maps = list(io.read_planar_code(out.read_bytes()))
    assert [m.F for m in maps] == [12, 16]


def test_enumerate_budget_exit(capsys, monkeypatch):
    monkeypatch.setenv("PENTILE_BUDGET_SECS", "0")
    code, out, _ = run(["enumerate", "--max-faces", "20"], capsys)
    assert code == 3 and "not authoritative" in out
    code, out, _ = run(["enumerate", "--max-faces", "20", "--json"], capsys)
    assert code == 3 and json.loads(out)["complete"] is False


def test_usage_errors(capsys):
    assert run(["enumerate"], capsys)[0] == 2
    assert run(["generate", "earthmap", "-d", "7", "-t", "2"], capsys)[0] == 2
    assert run(["generate", "earthmap"], capsys)[0] == 2
    assert run(["generate", "disk", "nope"], capsys)[0] == 2
    assert run(["frobnicate"], capsys)[0] == 2


def test_classify_and_stats(tmp_path, capsys):
    p = tmp_path / "e.json"
    main(["generate", "earthmap", "-d", "4", "-t", "2", "-o", str(p)])
    capsys.readouterr()
    code, out, _ = run(["classify", str(p), "--json"], capsys)
    assert json.loads(out) == {"earth_map": True, "distance": 4, "timezones": 2}
    code, out, _ = run(["stats", str(p), "--json"], capsys)
    info = json.loads(out)
    assert info["F"] == 24 and info["degrees"] == {"3": 36, "6": 2}
    assert info["distances"] == [[0, 4], [4, 0]]
    main(["generate", "dodecahedron", "-o", str(p)])
    capsys.readouterr()
    assert "not an earth map" in run(["classify", str(p)], capsys)[1]


def test_connected_sum_and_export(tmp_path, capsys):
    d = tmp_path / "d.json"
    s = tmp_path / "s.json"
    main(["generate", "dodecahedron", "-o", str(d)])
    assert main(["connected-sum", str(d), str(d), "--tile-a", "0", "--tile-b", "1",
                 "--rotation", "2", "--reflect", "-o", str(s)]) == 0
    capsys.readouterr()
    code, out, _ = run(["stats", str(s), "--json"], capsys)
    assert json.loads(out)["F"] == 22
    code, out, _ = run(["export", str(s), "--format", "dot"], capsys)
    assert out.startswith("graph") and out.count(" -- ") == 55
    code, out, _ = run(["export", str(s), "--format", "json"], capsys)
    assert json.loads(out)["version"] == 1
    assert main(["connected-sum", str(d), str(d), "--tile-a", "40", "--tile-b", "1"]) == 2


def test_export_planarcode(tmp_path, capsysbinary):
    d = tmp_path / "d.json"
    main(["generate", "three-v4", "-o", str(d)])
    capsysbinary.readouterr()
    assert main(["export", str(d), "--format", "planarcode"]) == 0
    data = capsysbinary.readouterr().out
    (m,) = io.read_planar_code(data)
    assert canonical_code(m) == canonical_code(three_v4_example())


def test_disk_generate_verify_and_isom(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["generate", "disk", "8gon", "-o", str(a)])
    main(["generate", "disk", "8gon", "--raw", "-o", str(b)])
    capsys.readouterr()
    assert run(["verify", str(a)], capsys)[0] == 0
    assert run(["isom", str(a), str(b)], capsys)[0] == 0
