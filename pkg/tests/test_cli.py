import json
import subprocess
import sys

import pytest

from simplex_forge.cli import main


def run(args, stdin=b""):
    proc = subprocess.run([sys.executable, "-m", "simplex_forge.cli", *args], input=stdin,
                          capture_output=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_check_exit_codes():
    code, out, _ = run(["check"], b'{"lengths":[3,4,5,6]}')
    assert code == 0 and json.loads(out)["payload"]["margin"] == 6.0
    code, out, _ = run(["check"], b'{"lengths":[1,2,3]}')
    assert code == 2 and json.loads(out)["status"] == "infeasible"
    code, out, err = run(["check"], b'{"lengths":[1,2,')
    assert code == 1 and json.loads(out)["status"] == "error" and err


def test_command_mismatch_is_an_error():
    code, out, _ = run(["check"], b'{"command":"realize","lengths":[1,1,1]}')
    assert code == 1


def test_realize_off_to_file(tmp_path):
    src = tmp_path / "job.json"
    dst = tmp_path / "tet.off"
    src.write_text('{"lengths":[3,4,5,6]}')
    assert main(["realize", "--input", str(src), "--output", str(dst), "--format", "off",
                 "--angles", "1.2"]) == 0
    assert dst.read_text().splitlines()[:2] == ["OFF", "4 4 6"]


def test_off_for_triangle_fails():
    code, out, _ = run(["realize", "--format", "off"], b'{"lengths":[1,1,1]}')
    assert code == 1 and "UnsupportedDimension" in json.loads(out)["message"]


def test_random_from_flags_is_byte_identical():
    a = run(["random", "--dimension", "3", "--seed", "42"])
    b = run(["random", "--dimension", "3", "--seed", "42"])
    assert a[0] == 0 and a[1] == b[1]
    assert json.loads(a[1])["payload"]["positive"] is True


def test_unit_flag():
    code, out, _ = run(["realize", "--unit", "facet"], b'{"lengths":[3,4,5,6]}')
    assert code == 0
    doc = json.loads(out)
    assert doc["payload"]["unit"] == "facet"
    assert doc["payload"]["facet_lengths"] == pytest.approx([3, 4, 5, 6], rel=1e-8)
