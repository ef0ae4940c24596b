"""Acceptance suite: one test per criterion, summarised at the end of the run."""

import subprocess
import sys
import time
from pathlib import Path

import pytest

from indexcode import sweeps
from indexcode.cli import main

pytestmark = pytest.mark.acceptance

FIXTURES = Path(__file__).parent / "fixtures"
SWEEP_LIMIT = 600.0


def cli(capsys, *argv):
    start = time.perf_counter()
    code = main([str(a) for a in argv])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    return code, out.splitlines(), elapsed


def sweep(name, suite):
    _, check = sweeps.SWEEPS[name]
    report = sweeps.run_sweep(name, suite, check)
    print(f"{name}: {report.checked} instances, {len(report.failures)} failures, "
          f"{report.seconds:.1f}s")
    assert report.checked == len(suite)
    assert report.failures == []
    return report


@pytest.fixture(scope="module")
def multisender_suite():
    suite = sweeps.multisender_suite(3)
    assert 0 < len(suite) < 10 ** 5
    return suite


@pytest.fixture(scope="module")
def cellular_suite():
    return sweeps.cellular_suite(3, pruned=True)


def test_criterion_01_instance_b_optimum(capsys):
    code, lines, elapsed = cli(capsys, "solve", FIXTURES / "instance_b.txt", "--machine")
    assert code == 0 and lines[0] == "N_opt 3"
    assert elapsed < 5
    code, lines, _ = cli(capsys, "oracle", FIXTURES / "instance_b.txt", "--machine")
    assert lines[0] == "N_opt 3"


def test_criterion_02_instance_c_cellular(capsys):
    code, lines, elapsed = cli(capsys, "solve-cellular", FIXTURES / "instance_c.txt", "--machine")
    assert code == 0 and lines[0] == "N_opt 2"
    code, lines, elapsed2 = cli(capsys, "verify", FIXTURES / "instance_c.txt",
                                FIXTURES / "instance_c.gen", "--machine")
    assert code == 0
    assert lines == ["length 2", "decodes 1 1 1", "verified true"]
    assert elapsed + elapsed2 < 5


def test_criterion_03_minrank_equals_oracle(multisender_suite):
    assert sweep("minrank-oracle", multisender_suite).seconds < SWEEP_LIMIT


def test_criterion_04_cellular_equals_oracle(cellular_suite):
    assert sweep("cellular-oracle", cellular_suite).seconds < SWEEP_LIMIT


def test_criterion_05_uncoded_iff_no_connected_zero_cycle(multisender_suite):
    sweep("uncoded-iff", multisender_suite)


def test_criterion_06_spanning_tree_codes(multisender_suite):
    sweep("spanning-tree", multisender_suite)


def test_criterion_07_criticality_soundness(multisender_suite):
    report = sweeps.run_sweep("criticality", multisender_suite,
                              lambda inst: sweeps.check_criticality(inst, joint=False))
    assert report.failures == []


def test_criterion_08_intersection_predicate(cellular_suite):
    sweep("intersection", cellular_suite)


def test_criterion_09_pruning_safety():
    raw = sweeps.cellular_suite(3, pruned=False)
    sweep("pruning", raw)


def test_criterion_10_instance_d_optimum(capsys):
    path = FIXTURES / "instance_d.txt"
    code, lines, t1 = cli(capsys, "solve-cellular", path, "--machine")
    assert code == 0 and lines[0] == "N_opt 3"
    code, lines, t2 = cli(capsys, "oracle-cellular", path, "--machine")
    assert code == 0 and lines[0] == "N_opt 3"
    assert t1 < 5 and t2 < 5


def test_criterion_11_uncoded_outside_cycles(multisender_suite):
    sweep("uncoded-outside", multisender_suite)


COMMANDS = ["solve", "solve-cellular", "oracle", "oracle-cellular", "analyze", "critical"]


def _run(command, fixture, workers):
    proc = subprocess.run([sys.executable, "-m", "indexcode", command, str(fixture),
                           "--machine", "--workers", str(workers)],
                          capture_output=True)
    return proc.returncode, proc.stdout


@pytest.mark.parametrize("fixture", sorted(FIXTURES.glob("instance_*.txt")), ids=lambda p: p.stem)
def test_criterion_12_deterministic_output(fixture):
    for command in COMMANDS:
        first = _run(command, fixture, 1)
        assert _run(command, fixture, 4) == first, command
        assert _run(command, fixture, 4) == first, command
        if fixture.stem in ("instance_c", "instance_d", "instance_e") or "cellular" not in command:
            assert first[0] == 0 and first[1], command
