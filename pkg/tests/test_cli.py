import pytest

from indexcode.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_b(capsys, fixture_path):
    code, out, _ = run(capsys, "solve", fixture_path("instance_b.txt"), "--workers", 1)
    assert code == 0 and "N_opt: 3" in out


def test_solve_cellular_c(capsys, fixture_path):
    code, out, _ = run(capsys, "solve-cellular", fixture_path("instance_c.txt"), "--machine")
    assert code == 0
    lines = out.splitlines()
    assert "N_opt 2" in lines and "dint12 0" in lines and "d123 2" in lines
    assert "column s1 x1+x2+x3" in lines and "column s2 x1+x3" in lines


def test_verify_ok(capsys, fixture_path):
    code, out, _ = run(capsys, "verify", fixture_path("instance_b.txt"),
                       fixture_path("instance_b.gen"))
    assert code == 0 and out.count(": ok") == 4


def test_verify_failure(capsys, fixture_path, tmp_path):
    gen = tmp_path / "short.gen"
    gen.write_text("s1: x1+x4\n")
    code, out, _ = run(capsys, "verify", fixture_path("instance_b.txt"), gen, "--machine")
    assert code == 1 and out.splitlines()[-1] == "verified false"


def test_verify_support_error(capsys, fixture_path, tmp_path):
    gen = tmp_path / "bad.gen"
    gen.write_text("s1: x2\n")
    code, _, err = run(capsys, "verify", fixture_path("instance_b.txt"), gen)
    assert code == 2 and "does not hold" in err


def test_encode(capsys, fixture_path):
    code, out, _ = run(capsys, "encode", fixture_path("instance_b.txt"),
                       fixture_path("instance_b.gen"), "1,0,1,1", "--machine")
    assert code == 0 and out == "s1 0\ns2 1 1\n"


def test_encode_bad_vector(capsys, fixture_path):
    code, _, _ = run(capsys, "encode", fixture_path("instance_b.txt"),
                     fixture_path("instance_b.gen"), "101")
    assert code == 2


def test_oracles(capsys, fixture_path):
    assert run(capsys, "oracle", fixture_path("instance_b.txt"))[1].startswith("N_opt: 3")
    code, out, _ = run(capsys, "oracle-cellular", fixture_path("instance_d.txt"), "--machine")
    assert code == 0 and out.startswith("N_opt 3\n")


def test_oracle_cap(capsys, fixture_path):
    code, _, err = run(capsys, "oracle", fixture_path("instance_a.txt"), "--max-n", 4)
    assert code == 3 and "limited" in err


def test_infeasible_exit(capsys, tmp_path):
    path = tmp_path / "inf.txt"
    path.write_text("q 2\nn 2\nm 2\nwants 1 2\nside 1 :\nside 2 :\nsender 1 : 1\nsender 2 : 2\n"
                    "coverage 1 : 2\ncoverage 2 :\ncoverage c : 1\n")
    with pytest.warns(UserWarning):
        assert run(capsys, "solve-cellular", path)[0] == 1
    with pytest.warns(UserWarning):
        code, out, _ = run(capsys, "oracle-cellular", path, "--machine")
    assert code == 1 and out == "N_opt infeasible\n"


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "solve", tmp_path / "missing.txt")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("q 2\nn 1\nm 1\nwants 1\nside 1 : 1\nsender 1 : 1\n")
    code, _, err = run(capsys, "solve", bad)
    assert code == 2 and "line 5" in err


def test_budget_exit(capsys, fixture_path):
    code, _, err = run(capsys, "solve", fixture_path("instance_a.txt"), "--budget", 10)
    assert code == 3 and "budget" in err


def test_analyze(capsys, fixture_path):
    code, out, _ = run(capsys, "analyze", fixture_path("instance_a.txt"), "--machine")
    assert code == 0
    assert "zero_cycle: 1 2 3 | connected=true" in out.splitlines()
    assert "zero_cycle: 1 2 5 | connected=false" in out.splitlines()
    code, out, _ = run(capsys, "analyze", fixture_path("instance_c.txt"), "--machine")
    assert "cycle 1 3 | irreducible mixed-r1-r2" in out.splitlines()


def test_critical(capsys, fixture_path):
    code, out, _ = run(capsys, "critical", fixture_path("instance_a.txt"), "--machine")
    assert code == 0 and out.splitlines()[-1] == "inconsistent 0"


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "uncoded-iff", "--machine", "--max-n", 2)
    assert code == 0 and "uncoded-iff.failures 0" in out
    code, out, _ = run(capsys, "sweep", "cellular-oracle", "--seed", 1, "--count", 10, "--machine")
    assert code == 0 and "cellular-oracle.checked 10" in out


def test_module_entry_point(fixture_path):
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "indexcode", "solve", str(fixture_path("instance_b.txt")),
                           "--machine", "--workers", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("N_opt 3\n")
