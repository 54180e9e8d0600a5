import json
import os
import subprocess
import sys

import pytest

from paperfold.cli import main
from paperfold.recursion import seed_table
from paperfold.substitution import DEPTH_CAP_ENV, Grid, S


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_supertile_text_and_json(capsys):
    assert run(capsys, "supertile", "--letter", "N", "--level", "0") == (0, "N\n", "")
    code, out, _ = run(capsys, "supertile", "--letter", "N", "--level", "1")
    assert out == "I N\nP L\n"
    code, out, _ = run(capsys, "supertile", "--letter", "N", "--level", "1", "--alphabet", "b4",
                       "--format", "json")
    assert Grid.from_json(out) == S(2)


def test_supertile_out_file(capsys, tmp_path):
    target = tmp_path / "t.json"
    code, out, _ = run(capsys, "supertile", "--letter", "A", "--level", "3", "--format", "json",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert Grid.from_json(target.read_text()).shape == (8, 8)


def test_count(capsys):
    assert run(capsys, "count", "--rows", "2", "--cols", "2", "--structure", "T")[1] == "76 (plateau at T_5)\n"
    code, out, _ = run(capsys, "count", "--rows", "1", "--cols", "1", "--structure", "S", "--list")
    lines = out.splitlines()
    assert lines[0].startswith("4 ")
    assert lines[1:] == ["1 1 B4 0", "1 1 B4 1", "1 1 B4 2", "1 1 B4 3"]


def test_table(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 0 and out == seed_table().to_csv()
    assert run(capsys, "table", "--source", "seed")[1] == out


def test_census(capsys, tmp_path):
    target = tmp_path / "c.csv"
    assert run(capsys, "census", "--n-max", "12", "--brute-max", "2", "--out", str(target))[0] == 0
    lines = target.read_text().splitlines()
    assert len(lines) == 13
    assert lines[1:11] == seed_table().to_csv().splitlines()[1:]


def test_sequence_example(capsys):
    code, out, _ = run(capsys, "sequence", "--n-max", "5", "--method", "closed")
    assert out == "1 4\n2 68\n3 184\n4 316\n5 520\n"


def test_sequence_methods_agree(capsys):
    outs = {m: run(capsys, "sequence", "--n-max", "12", "--method", m)[1]
            for m in ("closed", "recursive", "brute")}
    assert len(set(outs.values())) == 1
    assert run(capsys, "sequence", "--n-max", "12", "--no-crosscheck")[1] == outs["closed"]


def test_render(capsys, tmp_path):
    code, out, _ = run(capsys, "render", "--which", "fold", "--level", "1", "--format", "ascii")
    assert out == "+-+-+\n| o |\n+*+o+\n| o |\n+-+-+\n"
    target = tmp_path / "s.svg"
    assert run(capsys, "render", "--which", "S", "--level", "2", "--out", str(target))[0] == 0
    assert target.read_text().count("<circle") == 32
    assert run(capsys, "render", "--which", "S", "--level", "0")[0] == 2


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--budget", "max_square=4,max_depth=10,max_closed_n=100",
                       "--json")
    assert code == 0
    assert {r["status"] for r in json.loads(out)} <= {"pass", "skipped"}


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["count", "--rows", "0", "--cols", "2"],
        ["supertile", "--letter", "Z", "--level", "1"],
        ["supertile", "--letter", "N"],
        ["verify", "--budget", "max_square=x"],
        ["sequence", "--n-max", "-3"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_resource_cap_exits_1(capsys, monkeypatch):
    monkeypatch.setenv(DEPTH_CAP_ENV, "4")
    code, out, err = run(capsys, "supertile", "--letter", "N", "--level", "5")
    assert code == 1 and "depth" in err
    code, out, err = run(capsys, "count", "--rows", "2", "--cols", "2")
    assert code == 1 and "plateau" in err


def test_module_entry_point():
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "paperfold", "count", "--rows", "4", "--cols", "4"],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 0 and proc.stdout == "316 (plateau at T_6)\n"
    proc = subprocess.run([sys.executable, "-m", "paperfold", "count"], capture_output=True, text=True)
    assert proc.returncode == 2 and "usage" in proc.stderr
