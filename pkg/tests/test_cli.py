import io
import re
import os
import subprocess
import sys
from pathlib import Path

import pytest

from mrp.cli import COMMANDS, run_command

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = FIXTURES / "expected"

# (name, argv, exit status); every command appears with each status it can produce
MATRIX = [
    ("intnum_fano", ["intnum", "fano.txt", "--oracle", "7"], 0),
    ("intnum_small_decimal", ["intnum", "small.txt", "--decimal"], 0),
    ("intnum_bad_index", ["intnum", "bad_index.txt"], 2),
    ("kelley_check_small", ["kelley-check", "small.txt"], 0),
    ("kelley_check_empty_piece", ["kelley-check", "empty_piece.txt"], 2),
    ("kelley_build_power3", ["kelley-build", "power3.txt"], 0),
    ("kelley_build_small", ["kelley-build", "small.txt"], 1),
    ("approx_fano_boundary", ["approx-check", "fano.txt", "--eps", "4/7"], 0),
    ("approx_small", ["approx-check", "small.txt", "--eps", "1/4"], 1),
    ("approx_no_eps", ["approx-check", "small.txt"], 2),
    ("approx_eps_range", ["approx-check", "small.txt", "--eps", "1"], 2),
    ("nonatomic_check_dyadic3", ["nonatomic-check", "dyadic3.txt"], 0),
    ("nonatomic_check_flat", ["nonatomic-check", "flat.txt"], 1),
    ("nonatomic_check_no_dec", ["nonatomic-check", "fano.txt"], 2),
    ("nonatomic_build_dyadic3", ["nonatomic-build", "dyadic3.txt"], 0),
    ("nonatomic_build_flat", ["nonatomic-build", "flat.txt"], 1),
    ("small_subset_ok", ["small-subset", "dyadic3.txt", "--eps", "1/5"], 0),
    ("small_subset_level", ["small-subset", "dyadic3.txt", "--eps", "1/3", "--n", "1",
                            "--member", "2"], 0),
    ("small_subset_too_deep", ["small-subset", "dyadic3.txt", "--eps", "1/16"], 1),
    ("linked_fano", ["linked", "fano.txt", "--n", "2"], 0),
    ("linked_fano_3", ["linked", "fano.txt", "--n", "3"], 1),
    ("min_pieces_fano", ["min-pieces", "fano.txt"], 0),
    ("min_pieces_beta", ["min-pieces", "small.txt", "--beta", "3/4"], 0),
    ("min_pieces_linked", ["min-pieces", "small.txt", "--n", "2", "--family", "triangle"], 0),
    ("min_pieces_both", ["min-pieces", "small.txt", "--n", "2", "--beta", "1/2"], 2),
    ("min_pieces_beta_too_big", ["min-pieces", "small.txt", "--beta", "3/2"], 2),
    ("dyadic_2", ["dyadic", "--depth", "2"], 0),
    ("dyadic_2_unions", ["dyadic", "--depth", "2", "--unions"], 0),
    ("dyadic_no_depth", ["dyadic"], 2),
    ("unknown_command", ["bogus", "fano.txt"], 2),
    ("unknown_flag", ["intnum", "fano.txt", "--wat"], 2),
    ("missing_instance", ["intnum"], 2),
    ("bad_fraction", ["approx-check", "fano.txt", "--eps", "x/y"], 2),
]


def run(argv):
    argv = [str(FIXTURES / a) if a.endswith(".txt") else a for a in argv]
    out, err = io.StringIO(), io.StringIO()
    status = run_command(argv, out, err)
    return status, out.getvalue(), err.getvalue()


def test_matrix_covers_every_command():
    assert {argv[0] for _, argv, _ in MATRIX} >= set(COMMANDS)


@pytest.mark.parametrize("name, argv, status", MATRIX, ids=[m[0] for m in MATRIX])
def test_exit_status_and_golden_report(name, argv, status):
    got, out, err = run(argv)
    assert got == status, err
    golden = GOLDEN / f"{name}.txt"
    if os.environ.get("MRP_REGEN_GOLDEN"):
        golden.parent.mkdir(exist_ok=True)
        golden.write_text(out)
    assert out == golden.read_text()
    if status == 2:
        assert err


@pytest.mark.parametrize("name, argv, status", MATRIX[:8], ids=[m[0] for m in MATRIX[:8]])
def test_reports_are_deterministic(name, argv, status):
    assert run(argv) == run(argv)


def test_no_decimal_points_without_flag():
    for name, argv, status in MATRIX:
        if status != 2 and "--decimal" not in argv:
            _, out, _ = run(argv)
            assert not re.search(r"\d\.\d", out), name


def test_fano_intnum_prints_three_sevenths():
    status, out, _ = run(["intnum", "fano.txt"])
    assert status == 0 and "int = 3/7" in out


def test_dyadic_output_is_a_valid_instance(tmp_path):
    _, out, _ = run(["dyadic", "--depth", "3"])
    path = tmp_path / "d.txt"
    path.write_text(out)
    status, report, _ = run(["nonatomic-check", str(path)])
    assert status == 0
    assert report.count("ok") >= 3
    assert out == (FIXTURES / "dyadic3.txt").read_text()


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mrp.cli", "intnum", str(FIXTURES / "fano.txt")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "3/7" in proc.stdout
