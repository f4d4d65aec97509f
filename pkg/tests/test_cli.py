import json

import pytest

from latnaf import cli


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj), encoding="utf-8")
    return str(p)


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def base2(tmp_path):
    return write(tmp_path, "b2.json", {"base": {"minpoly": [-2, 1]}, "w": 2})


@pytest.fixture
def base3(tmp_path):
    return write(tmp_path, "b3.json", {"base": {"minpoly": [-3, 1]}, "w": 2})


@pytest.fixture
def quad(tmp_path):
    return write(tmp_path, "q.json", {"base": {"minpoly": [2, -1, 1]}, "w": 2})


def test_info_quadratic_exact_output(capsys, quad):
    code, out, _ = run(capsys, "info", "--instance", quad)
    assert code == 0
    assert out == (
        "n = 2\n"
        "char_poly = [2, -1, 1]\n"
        "det = 2\n"
        "expanding = true\n"
        "embedding_modulus_1 = [1.414213562373, 1.414213562374]\n"
        "inv_norm = [0.707106781186, 0.707106781187]\n"
        "w0 = 3\n"
        "r_sq = 1/2\n"
        "R_sq = 8/7\n"
        "r = [0.707106781186, 0.707106781187]\n"
        "R = [1.069044967649, 1.069044967650]\n"
        "tiling_w = 3\n"
    )


def test_info_not_expanding_stops_early(capsys, tmp_path):
    path = write(tmp_path, "id.json", {"base": {"matrix": [[1]]}, "w": 1})
    code, out, _ = run(capsys, "info", "--instance", path)
    assert code == 0
    assert "expanding = false" in out
    assert "w0" not in out


def test_info_linear_base(capsys, tmp_path):
    path = write(tmp_path, "l3.json", {"base": {"minpoly": [-3, 1]}, "w": 1})
    code, out, _ = run(capsys, "info", "--instance", path)
    assert code == 0
    assert "w0 = 1\n" in out
    assert "det = 3\n" in out


def test_digit_set_listing(capsys, base2):
    code, out, _ = run(capsys, "digit-set", "--instance", base2)
    assert code == 0
    assert out == "count = 3\n-1\n0\n1\n"


def test_digit_set_two_dim(capsys, tmp_path):
    path = write(tmp_path, "g.json", {"base": {"minpoly": [2, -2, 1]}, "w": 2})
    code, out, _ = run(capsys, "digit-set", "--instance", path)
    assert code == 0
    assert out == "count = 3\n-1,0\n-1,1\n0,0\n"


def test_expand_text(capsys, base2):
    code, out, _ = run(capsys, "expand", "--instance", base2, "--point", "7")
    assert code == 0
    assert out == (
        "msd = 1 0 0 -1\n"
        "lsd = -1 0 0 1\n"
        "weight = 2\n"
        "value_check = ok\n"
    )


def test_expand_two_dim_tokens(capsys, tmp_path):
    path = write(tmp_path, "g.json", {"base": {"minpoly": [2, -2, 1]}, "w": 2})
    code, out, _ = run(capsys, "expand", "--instance", path, "--point", "5,0")
    assert code == 0
    assert "value_check = ok" in out
    assert "(-1,0)" in out


def test_expand_requires_point(capsys, base2):
    code, _, err = run(capsys, "expand", "--instance", base2)
    assert code == 2
    assert "point" in err


def test_expand_counterexample_exit_code(capsys, tmp_path):
    path = write(
        tmp_path,
        "bad.json",
        {"base": {"minpoly": [-2, 1]}, "w": 2, "digitset": [[0], [1], [3]]},
    )
    code, out, _ = run(capsys, "expand", "--instance", path, "--point", "-1")
    assert code == 1
    assert "status = counterexample" in out
    assert "cycle = -2 -1" in out


def test_check_nads_certified(capsys, base3):
    code, out, _ = run(capsys, "check-nads", "--instance", base3)
    assert code == 0
    assert out == (
        "status = certified_by_bound\nbound_used = minimal-norm-contraction\n"
    )


def test_check_nads_search(capsys, base2):
    code, out, _ = run(capsys, "check-nads", "--instance", base2)
    assert code == 0
    assert "status =" in out


def test_check_nads_counterexample(capsys, tmp_path):
    path = write(
        tmp_path,
        "bad.json",
        {"base": {"minpoly": [-2, 1]}, "w": 2, "digitset": [[0], [1], [3]]},
    )
    code, out, _ = run(capsys, "check-nads", "--instance", path)
    assert code == 1
    assert "status = counterexample" in out
    assert "cycle = -2 -1" in out


def test_check_nads_search_gaussian(capsys, tmp_path):
    path = write(tmp_path, "g2.json", {"base": {"minpoly": [2, -2, 1]}, "w": 2})
    code, out, _ = run(capsys, "check-nads", "--instance", path)
    assert code == 0
    assert "status = verified_by_search" in out
    assert "search_radius = " in out


def test_check_optimality_radius_1000(capsys, base3):
    code, out, _ = run(
        capsys, "check-optimality", "--instance", base3, "--radius", "1000"
    )
    assert code == 0
    assert "verdict = certified" in out
    assert "violations = 0" in out
    assert "points_checked = 2001" in out


def test_check_optimality_certified(capsys, base3):
    code, out, _ = run(
        capsys, "check-optimality", "--instance", base3, "--radius", "50"
    )
    assert code == 0
    assert "verdict = certified" in out
    assert "violations = 0" in out
    assert "window_inequality = true" in out


def test_check_optimality_boundary_not_certified(capsys, base2):
    code, out, _ = run(
        capsys, "check-optimality", "--instance", base2, "--radius", "30"
    )
    assert code == 0  # certificate fails, but no violation found
    assert "verdict = not_certified" in out
    assert "window_inequality = false" in out
    assert "violations = 0" in out


def test_json_format_mirrors_keys(capsys, base3):
    code, out, _ = run(
        capsys, "check-nads", "--instance", base3, "--format", "json"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj == {
        "status": "certified_by_bound",
        "bound_used": "minimal-norm-contraction",
    }


def test_json_format_digit_set(capsys, base2):
    code, out, _ = run(capsys, "digit-set", "--instance", base2, "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj == {"count": 3, "digits": ["-1", "0", "1"]}


def test_malformed_json_reports_position(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"base": {"minpoly": [2, -1, 1]\n "w": 2}\n', encoding="utf-8")
    code, _, err = run(capsys, "info", "--instance", str(p))
    assert code == 2
    assert "line 2" in err
    assert "column" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "info", "--instance", "/nonexistent/x.json")
    assert code == 2
    assert "error:" in err


def test_validation_errors(capsys, tmp_path):
    both = write(
        tmp_path,
        "both.json",
        {"base": {"minpoly": [-2, 1], "matrix": [[2]]}, "w": 2},
    )
    code, _, err = run(capsys, "info", "--instance", both)
    assert code == 2
    assert "exactly one" in err
    zero_w = write(tmp_path, "w0.json", {"base": {"minpoly": [-2, 1]}, "w": 0})
    code, _, _ = run(capsys, "info", "--instance", zero_w)
    assert code == 2
    bad_point = write(tmp_path, "p.json", {"base": {"minpoly": [-2, 1]}, "w": 2})
    code, _, _ = run(capsys, "expand", "--instance", bad_point, "--point", "a,b")
    assert code == 2


def test_numbers_as_strings(capsys, tmp_path):
    path = write(
        tmp_path,
        "s.json",
        {"base": {"minpoly": ["-2", "1"]}, "w": "2"},
    )
    code, out, _ = run(capsys, "digit-set", "--instance", path)
    assert code == 0
    assert "count = 3" in out


def test_huge_string_integer(capsys, tmp_path):
    big = str(-(10**30))
    path = write(
        tmp_path, "big.json", {"base": {"minpoly": [big, "1"]}, "w": 1}
    )
    code, out, _ = run(capsys, "info", "--instance", path)
    assert code == 0
    assert f"det = {10**30}\n" in out


def test_env_precision_cap(capsys, quad, monkeypatch):
    monkeypatch.setenv("NAF_PRECISION_CAP_BITS", "512")
    code, out, _ = run(capsys, "info", "--instance", quad)
    assert code == 0
    monkeypatch.setenv("NAF_PRECISION_CAP_BITS", "nonsense")
    code, _, err = run(capsys, "info", "--instance", quad)
    assert code == 2
    assert "precision_cap" in err


def test_byte_identical_reruns(capsys, quad, base3):
    outs = set()
    for _ in range(3):
        _, out, _ = run(capsys, "info", "--instance", quad)
        outs.add(out)
    assert len(outs) == 1
    outs.clear()
    for _ in range(2):
        _, out, _ = run(
            capsys, "check-optimality", "--instance", base3, "--radius", "40"
        )
        outs.add(out)
    assert len(outs) == 1


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "latnaf", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "info" in proc.stdout
