import csv
import json
import math

import numpy as np
import pytest

from favdist import io
from favdist.cli import main
from favdist.core import PointSet3


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_construct_square(tmp_path, capsys):
    out = tmp_path / "s13.json"
    assert run(capsys, "construct", "--n", 13, "--variant", "square", "--out", out)[0] == 0
    doc = json.loads(out.read_text())
    assert len(doc["points"]) == 13
    assert doc["meta"]["expected"] == 76
    assert (doc["meta"]["ell"], doc["meta"]["c"]) == (5, 8)


def test_construct_below_threshold(tmp_path, capsys):
    assert run(capsys, "construct", "--n", 12, "--out", tmp_path / "x.json")[0] == 2


def test_construct_unwritable(tmp_path, capsys):
    assert run(capsys, "construct", "--n", 13, "--out", tmp_path / "no" / "dir.json")[0] == 2


def test_verify_construction(tmp_path, capsys):
    out = tmp_path / "s13.json"
    main(["construct", "--n", "13", "--out", str(out)])
    code, rep = run(capsys, "verify", out)
    assert code == 0
    assert rep["e_total"] == 76
    assert rep["matches"] is True
    assert rep["suspension"]["e_total"] == 76
    assert rep["suspension"]["formula_value"] == 77


def test_verify_hexagon_is_worse(tmp_path, capsys):
    out = tmp_path / "h20.json"
    main(["construct", "--n", "20", "--variant", "hexagon", "--out", str(out)])
    code, rep = run(capsys, "verify", "--in", out)
    assert code == 0
    assert rep["e_total"] < 151


def test_verify_corrupted_coordinate(tmp_path, capsys):
    out = tmp_path / "s13.json"
    main(["construct", "--n", "13", "--out", str(out)])
    doc = json.loads(out.read_text())
    doc["points"][7][1] += 0.01
    out.write_text(json.dumps(doc))
    code, rep = run(capsys, "verify", out)
    assert code == 1
    assert rep["matches"] is False


def test_verify_equilateral_without_radii(tmp_path, capsys):
    out = tmp_path / "tri.json"
    out.write_text(json.dumps({"points": [[0, 0, 0], [1, 0, 0], [0.5, math.sqrt(3) / 2, 0]]}))
    code, rep = run(capsys, "verify", out)
    assert code == 0
    assert rep["e_total"] == 6
    assert rep["detection"].startswith("skipped")
    assert rep["radii_source"] == "mode"


@pytest.mark.parametrize("text", [
    "not json",
    '{"points": [[0, 0]]}',
    '{"points": [[0,0,0],[1,0,0]], "radii": [1]}',
    '{"points": [[0,0,0],[1,0,0]], "radii": [1, -1]}',
    '{"radii": [1]}',
    '{"points": [[0,0,0],[0,0,0]], "radii": [1, 1]}',
])
def test_verify_malformed(tmp_path, capsys, text):
    out = tmp_path / "bad.json"
    out.write_text(text)
    assert run(capsys, "verify", out)[0] == 2


def test_verify_missing_file(tmp_path, capsys):
    assert run(capsys, "verify", tmp_path / "nope.json")[0] == 2


def test_bounds_table(tmp_path, capsys):
    out = tmp_path / "b.csv"
    assert run(capsys, "bounds-table", "--n-min", 1, "--n-max", 100, "--csv", out)[0] == 0
    raw = out.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    lines = raw.decode().splitlines()
    assert lines[0] == "n,lower,suspension_cap,upper,constructed"
    rows = {int(r["n"]): r for r in csv.DictReader(lines)}
    assert lines[5] == "5,20,21,31,"
    assert lines[13] == "13,76,77,87,76"
    assert lines[100] == "100,2751,2752,2762,2751"
    assert all(rows[n]["constructed"] == rows[n]["lower"] for n in range(13, 101))


@pytest.mark.parametrize("lo, hi", [(0, 5), (10, 5), (1, 10**6 + 1)])
def test_bounds_table_ranges(tmp_path, capsys, lo, hi):
    assert run(capsys, "bounds-table", "--n-min", lo, "--n-max", hi, "--csv", tmp_path / "b.csv")[0] == 2


def test_bounds_table_unwritable(tmp_path, capsys):
    assert run(capsys, "bounds-table", "--n-min", 1, "--n-max", 3, "--csv", tmp_path / "x" / "b.csv")[0] == 2


def test_search_cli(capsys):
    code, rep = run(capsys, "search", "--n", 3, "--iters", 1000, "--restarts", 1, "--seed", 1,
                    "--init", "random")
    assert code == 0
    assert rep["e_value"] == 6
    assert len(rep["points"]) == 3


def test_search_requires_seed(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["search", "--n", "3"])
    assert exc.value.code == 2


def test_search_suspension_needs_13(capsys):
    assert run(capsys, "search", "--n", 5, "--seed", 1, "--init", "suspension")[0] == 2


def test_detect_cli(tmp_path, capsys):
    out = tmp_path / "s20.json"
    main(["construct", "--n", "20", "--out", str(out)])
    code, rep = run(capsys, "detect", "--in", out, "--tol", 1e-6, "--ransac-iters", 100, "--seed", 3)
    assert code == 0
    assert rep["t"] == 0
    assert (len(rep["C"]), len(rep["L"])) == (12, 8)


def test_newman_cli(capsys):
    code, rep = run(capsys, "newman", "--max-denominator", 64, "--tol", 1e-12)
    assert code == 0
    assert rep["solutions"] == [
        {"theta_over_pi": "1/4", "phi_over_pi": "1/2"},
        {"theta_over_pi": "1/2", "phi_over_pi": "1/3"},
    ]


def test_point_set_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(50, 3)) * 10.0 ** rng.integers(-8, 8, size=(50, 1))
    radii = rng.uniform(1e-6, 1e6, size=50)
    path = tmp_path / "p.json"
    io.write_point_set(path, PointSet3(pts, radii, {"note": "x"}))
    got_pts, got_radii, meta = io.read_point_set(path)
    assert np.array_equal(got_pts, pts)
    assert np.array_equal(got_radii, radii)
    assert meta == {"note": "x"}


def test_seventeen_significant_digits():
    text = io.dumps([[0.1, 1 / 3, 2.0]], [math.pi])
    assert "0.10000000000000001" in text
    assert "3.1415926535897931" in text


@pytest.mark.parametrize("n", [13, 14, 15, 16, 50, 99, 100, 257, 500])
@pytest.mark.parametrize("variant", ["square", "hexagon"])
def test_construct_then_verify(tmp_path, capsys, n, variant):
    out = tmp_path / "c.json"
    assert main(["construct", "--n", str(n), "--variant", variant, "--out", str(out)]) == 0
    code, rep = run(capsys, "verify", out)
    assert code == 0, rep


def test_construct_then_verify_full_range(tmp_path, capsys):
    out = tmp_path / "c.json"
    failures = []
    for variant in ("square", "hexagon"):
        for n in range(13, 501):
            main(["construct", "--n", str(n), "--variant", variant, "--out", str(out)])
            if main(["verify", str(out)]) != 0:
                failures.append((variant, n))
            capsys.readouterr()
    assert failures == []
