import csv
import io
import json
import math

import pytest

from funkfinsler.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_origin(capsys):
    code, out, _ = run(capsys, "eval", "--x", "0,0", "--xi", "1,0")
    rec = json.loads(out)
    assert code == 0
    assert rec["F"] == pytest.approx(1.31303528549933, rel=1e-14)
    assert rec["alpha"] + rec["beta"] == pytest.approx(rec["F"])


def test_eval_negative_components(capsys):
    code, out, _ = run(capsys, "eval", "--x=-0.3,0.1", "--xi=0,-1")
    assert code == 0
    assert json.loads(out)["x"] == [-0.3, 0.1]


@pytest.mark.parametrize("metric", ["klein", "poincare-funk", "upper-funk", "upper-funk-printed", "disc-funk", "disc-hilbert"])
def test_eval_other_metrics(capsys, metric):
    x = "0,2" if metric.startswith("upper") else "0.1,0.05"
    code, out, _ = run(capsys, "eval", "--metric", metric, "--x", x, "--xi", "1,1")
    assert code == 0
    assert json.loads(out)["F"] > 0


def test_eval_outside_domain(capsys):
    code, out, err = run(capsys, "eval", "--x", "0.9,0", "--xi", "1,0")
    assert code == 2
    assert out == ""
    assert "outside" in err


def test_distance_verify(capsys):
    code, out, _ = run(capsys, "distance", "--x", "0,0", "--y", f"{math.tanh(0.5)!r},0", "--verify")
    rec = json.loads(out)
    assert code == 0
    assert rec["d"] == pytest.approx(0.813261687518223, rel=1e-12)
    assert rec["difference"] <= 1e-6


def test_distance_verify_needs_projective_metric(capsys):
    code, _, err = run(capsys, "distance", "--metric", "poincare-funk", "--x", "0,0", "--y", "0.1,0", "--verify")
    assert code == 2 and err


def test_geodesic_csv(capsys):
    code, out, _ = run(capsys, "geodesic", "--x0", "0,0", "--v0", "1,0", "--t-end", "0.1", "--step", "0.01")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "t,x1,x2,v1,v2,F"
    footer = dict(kv.split("=") for kv in lines[-1].lstrip("# ").split(","))
    assert footer["terminated_reason"] == "completed"
    assert int(footer["samples"]) == len(lines) - 2 == 11
    assert float(footer["collinearity_residual"]) <= 1e-12
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[:-1]))))
    assert float(rows[-1]["t"]) == pytest.approx(0.1)


def test_geodesic_leaves_domain(capsys):
    code, out, _ = run(capsys, "geodesic", "--x0", "0.7,0", "--v0", "1,0", "--t-end", "50", "--step", "0.01")
    assert code == 0
    assert "terminated_reason=left_domain" in out


def test_curvature_grid_tangential(capsys):
    code, out, _ = run(capsys, "curvature-grid", "--grid=-0.3,0.3,-0.3,0.3", "--n", "3,3", "--xi-mode", "tangential")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 9
    centre = rows[4]
    assert float(centre["K"]) == pytest.approx(-0.867716164289399, rel=1e-12)
    # the four edge midpoints sit at |x| = 0.3
    for i in (1, 3, 5, 7):
        assert float(rows[i]["K"]) == pytest.approx(-0.840256206121723, rel=1e-12)
    # the corners at |x| = 0.42 are inside as well
    assert all(r["K"] != "null" for r in rows)


def test_curvature_grid_masks_outside_cells(capsys):
    code, out, _ = run(capsys, "curvature-grid", "--grid=-1,1,-1,1", "--n", "3,3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert rows[0]["S"] == rows[0]["Ric"] == rows[0]["K"] == "null"
    assert rows[4]["K"] != "null"


def test_check_suite_pass(capsys):
    code, out, _ = run(capsys, "check", "zermelo", "--samples", "50")
    assert code == 0
    assert out.splitlines() and all(line.startswith("PASS") for line in out.splitlines())


def test_check_typo_ledger_always_succeeds(capsys):
    code, out, _ = run(capsys, "check", "typo-ledger", "--samples", "20")
    assert code == 0
    assert "beta_U" in out and "||W||_h^2" in out


def test_check_unknown_suite():
    with pytest.raises(SystemExit) as exc:
        main(["check", "bogus"])
    assert exc.value.code == 2


def test_zermelo_command(capsys):
    code, out, _ = run(capsys, "zermelo", "--x", "0.3,0", "--xi", "0,1")
    rec = json.loads(out)
    assert code == 0
    assert rec["wind_norm_sq"] == pytest.approx(0.033048978072341, rel=1e-12)
    assert rec["W"][0] < 0


def test_out_file(tmp_path, capsys):
    path = tmp_path / "e.json"
    code, out, _ = run(capsys, "eval", "--x", "0,0", "--xi", "0,1", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["F"] == pytest.approx(1.31303528549933)


def test_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "check", "isometries", "--samples", "20", "--seed", "7")
    _, second, _ = run(capsys, "check", "isometries", "--samples", "20", "--seed", "7")
    assert first == second
