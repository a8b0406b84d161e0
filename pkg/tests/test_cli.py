import json

import pytest

from loopchains import cli, verify
from loopchains.constloops import rho_raw
from goldens import rho_golden_lines

SPHERE = {"name": "sphere", "maximal_simplices": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
          "collapse": [[0, 1, 3], [0, 2, 3], [1, 2, 3]]}


@pytest.fixture
def sphere_file(tmp_path):
    p = tmp_path / "sphere.json"
    p.write_text(json.dumps(SPHERE))
    return str(p)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_rho_matches_goldens(capsys, k):
    code, out, _ = run(capsys, "rho", "--simplex", ",".join(map(str, range(k + 1))))
    assert code == 0
    assert out.strip().split("\n") == rho_golden_lines(k)


def test_rho_json_and_ring(capsys):
    code, out, _ = run(capsys, "rho", "--simplex", "0,1", "--format", "json", "--ring", "Zmod:3")
    data = json.loads(out)
    assert code == 0 and data["ring"] == "Zmod:3"
    assert data["terms"] == [{"coefficient": "1", "necklace": "([1,0])[0,1]"}]


def test_chi_methods_agree(capsys):
    _, direct, _ = run(capsys, "chi", "--simplex", "0,1,2")
    _, composed, _ = run(capsys, "chi", "--simplex", "0,1,2", "--method", "composed")
    assert direct == composed and direct.strip()


def test_output_is_byte_deterministic(capsys):
    outs = {run(capsys, "rho", "--simplex", "0,1,2,3")[1] for _ in range(3)}
    assert len(outs) == 1


def test_simplex_must_belong_to_the_file(capsys, sphere_file):
    code, _, err = run(capsys, "rho", sphere_file, "--simplex", "0,1,2,3")
    assert code == 2 and "not a simplex" in err


@pytest.mark.parametrize("argv", [
    ["rho"],
    ["rho", "--simplex", "0,0"],
    ["rho", "--simplex", "a,b"],
    ["rho", "--simplex", "0,1", "--ring", "R"],
    ["verify", "/nonexistent/complex.json"],
    ["verify", "--simplex", "0,1", "--suite", "nope"],
    ["homology", "--simplex", "0,1", "--weight", "-1"],
    ["homology", "--simplex", "0,1", "--ring", "Zmod:4"],
    ["homology", "--simplex", "0,1", "--weight", "3", "--persist", "2"],
    ["homology", "--simplex", "0,1,2", "--reduce", "cohochschild"],
    ["verify", "--simplex", "0,1,2", "--suite", "theta"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["frobnicate"])
    assert e.value.code == 2


def test_bad_thread_setting(capsys, monkeypatch):
    monkeypatch.setenv("LOOPCHAINS_THREADS", "zero")
    code, _, err = run(capsys, "rho", "--simplex", "0")
    assert code == 2 and "LOOPCHAINS_THREADS" in err


def test_malformed_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(capsys, "verify", str(p))[0] == 2


def test_verify_passes_and_reports(capsys, sphere_file):
    code, out, _ = run(capsys, "verify", sphere_file, "--suite", "D2", "--suite", "theta", "--weight", "3")
    assert code == 0
    assert "D2: pass" in out and "theta: pass" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--simplex", "0,1,2", "--suite", "chainmap-rho", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["results"][0] == {"suite": "chainmap-rho", "passed": True, "checked": 7}


def test_verify_reports_a_broken_identity_with_exit_1(capsys, monkeypatch):
    def broken(s):
        out = dict(rho_raw(s))
        if len(s) == 3:
            out = {n: -c for n, c in out.items()}
        return out
    monkeypatch.setattr(verify, "rho_raw", broken)
    code, out, _ = run(capsys, "verify", "--simplex", "0,1,2", "--suite", "chainmap-rho")
    assert code == 1
    assert "chainmap-rho: FAIL" in out and "first failure at D rho [0,1,2]" in out


def test_homology_scan_threads_agree(capsys, monkeypatch, sphere_file):
    _, serial, _ = run(capsys, "homology", sphere_file, "--scan", "--weight", "3")
    monkeypatch.setenv("LOOPCHAINS_THREADS", "2")
    _, parallel, _ = run(capsys, "homology", sphere_file, "--scan", "--weight", "3")
    assert serial == parallel
    assert serial.split("\n")[1].split() == ["0", "0", "4", "-"]


def test_homology_single_and_persist(capsys, sphere_file):
    code, out, _ = run(capsys, "homology", sphere_file, "--weight", "4", "--format", "json")
    assert code == 0 and json.loads(out) == {"degree": 0, "weight": 4, "betti": 8, "torsion": []}
    code, out, _ = run(capsys, "homology", sphere_file, "--weight", "4", "--persist", "6")
    assert code == 0 and out.strip().endswith(": 1")


def test_homology_reduce_cohochschild(capsys, sphere_file):
    code, out, _ = run(capsys, "homology", sphere_file, "--reduce", "cohochschild", "--degree", "2")
    assert code == 0
    assert "theta_pi(rho(c)) = +1·([0,1,2]|[0,1,2])[*] +1·(id)[0,1,2]" in out
    code, out, _ = run(capsys, "homology", sphere_file, "--reduce", "cohochschild", "--degree", "2",
                       "--format", "json")
    data = json.loads(out)
    assert data["cycles"][0]["theta_rho"] == [
        {"coefficient": "1", "element": "([0,1,2]|[0,1,2])[*]"},
        {"coefficient": "1", "element": "(id)[0,1,2]"}]


def test_collapse_flag_overrides_file(capsys, sphere_file):
    code, _, err = run(capsys, "homology", sphere_file, "--reduce", "cohochschild", "--collapse", "0,1,3")
    assert code == 2 and "every vertex and edge" in err
