"""CLI contract: output text and exit codes."""

import json

import pytest

from adderkit.builders import build_ling4
from adderkit.cli import main
from adderkit.netlist import from_json, stuck_output, to_json


@pytest.fixture()
def ling4_file(tmp_path):
    path = tmp_path / "ling4.json"
    assert main(["build", "--family", "ling4", "--out", str(path)]) == 0
    return path


class TestBuildEval:
    def test_build_then_eval(self, ling4_file, capsys):
        capsys.readouterr()
        rc = main(
            ["eval", "--netlist", str(ling4_file), "--a", "0b1010", "--b", "0b0110"]
        )
        out = capsys.readouterr().out
        assert rc == 0
        assert "s = 0b0000 (0)" in out
        assert "cout = 1" in out

    def test_build_writes_valid_schema(self, ling4_file):
        doc = json.loads(ling4_file.read_text())
        assert doc["family"] == "ling4"
        net = from_json(ling4_file.read_text())
        assert len(net.gates) > 0

    def test_hex_and_decimal_operands(self, ling4_file, capsys):
        capsys.readouterr()
        assert main(["eval", "--netlist", str(ling4_file), "--a", "0xA", "--b", "6"]) == 0
        assert "cout = 1" in capsys.readouterr().out

    def test_taps_printed(self, ling4_file, capsys):
        capsys.readouterr()
        main(["eval", "--netlist", str(ling4_file), "--a", "0b1010", "--b", "0b0110", "--taps"])
        out = capsys.readouterr().out
        assert "H[3] = 1" in out and "g[0] = 0" in out

    def test_operand_overflow_is_usage_error(self, ling4_file, capsys):
        rc = main(["eval", "--netlist", str(ling4_file), "--a", "0b10000", "--b", "0"])
        assert rc == 2
        assert "exceeds width" in capsys.readouterr().err

    def test_missing_cin_is_usage_error(self, tmp_path, capsys):
        path = tmp_path / "rca.json"
        main(["build", "--family", "rca", "--cin", "1", "--out", str(path)])
        assert main(["eval", "--netlist", str(path), "--a", "1", "--b", "1"]) == 2

    def test_cin_value_applied(self, tmp_path, capsys):
        path = tmp_path / "rca.json"
        main(["build", "--family", "rca", "--cin", "0", "--out", str(path)])
        capsys.readouterr()
        main(["eval", "--netlist", str(path), "--a", "1", "--b", "1", "--cin", "1"])
        assert "s = 0b0011 (3)" in capsys.readouterr().out


class TestVerify:
    def test_exhaustive_grouped(self, capsys):
        rc = main(
            ["verify", "--family", "ling-grouped", "--width", "8", "--group", "4",
             "--mode", "exhaustive"]
        )
        out = capsys.readouterr().out
        assert rc == 0
        assert "65536 vectors, 0 failures" in out

    def test_failing_netlist_exits_one(self, tmp_path, capsys):
        net = stuck_output(build_ling4(), "cout", 0)
        path = tmp_path / "bad.json"
        path.write_text(to_json(net))
        rc = main(["verify", "--netlist", str(path)])
        out = capsys.readouterr().out
        assert rc == 1
        assert "16 failures" in out
        assert "a=15 b=1 cin=0" in out

    def test_random_mode_deterministic_stdout(self, capsys):
        argv = ["verify", "--family", "ling-grouped", "--width", "16", "--group", "4",
                "--mode", "random", "--samples", "2000", "--seed", "42"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        assert capsys.readouterr().out == first

    def test_exhaustive_cap_is_usage_error(self, capsys):
        rc = main(["verify", "--family", "ling-grouped", "--width", "32", "--group", "4"])
        assert rc == 2
        assert "cap" in capsys.readouterr().err


class TestCompare:
    def test_depth_story_in_table(self, capsys):
        rc = main(["compare", "--families", "rca,cla-flat,ling4", "--width", "4",
                   "--format", "markdown"])
        out = capsys.readouterr().out
        assert rc == 0
        rows = [ln for ln in out.splitlines() if ln.startswith("|") and "---" not in ln]
        header, *body = rows
        depth_col = [c.strip() for c in header.strip("|").split("|")].index("depth_carry_signal")
        by_family = {
            row.strip("|").split("|")[0].strip(): [c.strip() for c in row.strip("|").split("|")]
            for row in body
        }
        assert by_family["ling4"][depth_col] == "4"
        assert by_family["cla-flat"][depth_col] == "5"

    def test_csv_format(self, capsys):
        assert main(["compare", "--families", "ling4", "--format", "csv"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0].startswith("family,width,sum_form")

    def test_byte_identical_invocations(self, capsys):
        argv = ["compare", "--families", "rca,ling-grouped", "--width", "8", "--group", "4"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        assert capsys.readouterr().out == first

    def test_unknown_family_is_usage_error(self, capsys):
        assert main(["compare", "--families", "rca,bogus"]) == 2


class TestExport:
    def test_dot_to_stdout(self, ling4_file, capsys):
        capsys.readouterr()
        assert main(["export", "--netlist", str(ling4_file), "--format", "dot"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("digraph") and "->" in out

    def test_dot_to_file(self, ling4_file, tmp_path, capsys):
        out_path = tmp_path / "net.dot"
        assert main(["export", "--netlist", str(ling4_file), "--out", str(out_path)]) == 0
        assert out_path.read_text().startswith("digraph")

    def test_missing_file_is_usage_error(self, tmp_path, capsys):
        assert main(["export", "--netlist", str(tmp_path / "nope.json")]) == 2


class TestUsageErrors:
    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_unknown_flag(self, capsys):
        assert main(["build", "--family", "ling4", "--out", "x.json", "--wat"]) == 2

    def test_missing_required_flag(self, capsys):
        assert main(["build", "--family", "ling4"]) == 2

    def test_bad_operand_text(self, ling4_file, capsys):
        assert main(["eval", "--netlist", str(ling4_file), "--a", "zebra", "--b", "0"]) == 2

    def test_width_violation_is_usage_error(self, capsys):
        assert main(["build", "--family", "ling-flat", "--width", "40", "--out", "x.json"]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
