from __future__ import annotations

import json

import pytest

from zpsums.cli import main


@pytest.fixture
def zsf_file(tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("1\n2\n3\n4\n", encoding="utf-8")
    return str(f)


def test_analyze(zsf_file, capsys):
    assert main(["analyze", "--p", "11", "--set", zsf_file]) == 0
    out = capsys.readouterr().out
    assert "zero_sum_free: True" in out
    assert "complete: False" in out
    assert "sumset_size: 10" in out
    assert "best_dilation[zsf]: b=1" in out


def test_witness_found_and_unreachable(zsf_file, capsys):
    assert main(["witness", "--p", "11", "--set", zsf_file, "--target", "7"]) == 0
    assert "= " in capsys.readouterr().out
    assert main(["witness", "--p", "11", "--set", zsf_file, "--target", "0"]) == 1
    assert "unreachable" in capsys.readouterr().out


def test_construct_stdout_and_file(tmp_path, capsys):
    assert main(["construct", "--p", "13", "--family", "extremal-zsf"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[1:] == ["1", "2", "3", "4"]
    dest = tmp_path / "fam.txt"
    assert main(["construct", "--p", "11", "--family", "small-incomplete",
                 "--out", str(dest)]) == 0
    body = [l for l in dest.read_text(encoding="utf-8").splitlines()
            if not l.startswith("#")]
    assert body == ["1", "2", "3", "9", "10"]


def test_construct_domain_error_exits_2(capsys):
    assert main(["construct", "--p", "7", "--family", "exceptional"]) == 2
    assert "error" in capsys.readouterr().err


def test_maxzsf_and_maxinc(capsys):
    assert main(["maxzsf", "--p", "13"]) == 0
    out = capsys.readouterr().out
    assert "max_size=4" in out and "exhaustive=True" in out
    assert "witness: 1 2 3 4" in out
    assert main(["maxinc", "--p", "11"]) == 0
    assert "max_size=5" in capsys.readouterr().out


def test_scan_pass_fail_and_capability(tmp_path, capsys):
    assert main(["scan", "--theorem", "main1", "--p", "7:31",
                 "--format", "csv", "--no-timestamp"]) == 0
    assert capsys.readouterr().out.startswith("p,theorem,")
    # olson has known boundary failures in 7..13 -> exit 1, output intact
    dest = tmp_path / "olson.json"
    assert main(["scan", "--theorem", "olson", "--p", "7:13",
                 "--no-timestamp", "--out", str(dest)]) == 1
    doc = json.loads(dest.read_text(encoding="utf-8"))
    assert doc["summary"]["fail"] == 2
    assert main(["scan", "--theorem", "main1", "--p", "7:1000"]) == 2
    assert "capability" in capsys.readouterr().err


def test_scan_single_prime_range(capsys):
    assert main(["scan", "--theorem", "hz", "--p", "11",
                 "--format", "csv", "--no-timestamp"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1].startswith("11,hz,4,")


def test_scan_byte_identical_without_timestamp(capsys):
    argv = ["scan", "--theorem", "main1", "--p", "7:13", "--no-timestamp"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_pairs(capsys):
    assert main(["pairs", "--n", "7"]) == 0
    out = capsys.readouterr().out
    assert "pairs: 3" in out and "core_total: 24" in out


def test_usage_errors_exit_2(zsf_file):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--p", "11"])  # --set is required
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["scan", "--theorem", "made-up", "--p", "7:11"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_bad_modulus_exits_2(zsf_file, capsys):
    assert main(["analyze", "--p", "10", "--set", zsf_file]) == 2
    assert "error" in capsys.readouterr().err


def test_missing_set_file_exits_2(capsys):
    assert main(["analyze", "--p", "11", "--set", "/nonexistent/x.txt"]) == 2
    assert "error" in capsys.readouterr().err
