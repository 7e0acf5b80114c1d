import io

import pytest

from arithgames import arith, cli
from arithgames.cli import EXIT_MISMATCH, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE


@pytest.fixture(autouse=True)
def _restore_memory_cap():
    yield
    arith.set_max_limit(arith.MAX_LIMIT)


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_sg_prints_value_first():
    code, out, _ = call("sg", "maliquot", "8")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "3"
    assert lines[1] == "source: engine"
    assert "  4  ->  2" in lines


def test_sg_powerset_and_closed_form():
    code, out, _ = call("sg", "ps-maliquot", "6")
    assert out.splitlines()[0] == "2" and "allowed set (3)" in out
    code, out, _ = call("sg", "totient", "48114", "--closed-form")
    assert code == EXIT_OK and out.splitlines()[:2] == ["1", "source: closed-form"]
    code, _, err = call("sg", "stau", "5", "--closed-form")
    assert code == EXIT_USAGE and "no closed form" in err


def test_seq():
    code, out, _ = call("seq", "divide-throw-residue", "--to", "8")
    assert out == "0, 1, 2, 1, 3, 2, 4, 1\n"
    code, out2, _ = call("seq", "divide-throw-residue", "--to", "8", "--closed-form")
    assert out2 == out


def test_solve_p_position():
    code, out, _ = call("solve", "2@totient + 3@totient + 4@totient + 5@totient")
    assert code == EXIT_OK
    assert out == "P-position (value 0), no winning moves\n"


def test_solve_lists_winning_moves():
    code, out, _ = call("solve", "18@dividing + 7@dividing")
    assert out.startswith("N-position (value 2), 1 winning move:\n")
    assert "18@dividing -> 2+2+2+2+2+2+2+2+2" in out
    code, out, _ = call("solve", "48114@totient + 3@sub{1,2}")
    assert code == EXIT_OK and "3@sub{1,2} -> 2" in out


def test_verify_exit_codes():
    code, out, _ = call("verify", "saliquot", "--to", "10000")
    assert code == EXIT_OK and out.startswith("saliquot: PASS")
    code, out, _ = call("verify", "mtau", "--to", "46655")
    assert code == EXIT_MISMATCH and "n=44100" in out
    code, _, _ = call("verify", "--to", "10")
    assert code == EXIT_USAGE


def test_verify_soft_report_does_not_fail():
    code, out, _ = call("verify", "nontotient", "--to", "300")
    assert code == EXIT_OK and "[report]" in out


def test_usage_errors():
    assert call("solve", "3@maliquot +")[0] == EXIT_USAGE
    code, _, err = call("solve", "3@nosuch")
    assert code == EXIT_USAGE and "offset 2" in err
    assert call("sg", "maliquot", "0")[0] == EXIT_USAGE
    assert call("sg", "nosuch", "4")[0] == EXIT_USAGE
    assert call("frobnicate")[0] == EXIT_USAGE


def test_resource_errors():
    code, _, err = call("seq", "ps-maliquant", "--to", "80")
    assert code == EXIT_RESOURCE and "62" in err
    code, _, err = call("--max-memory", "1", "seq", "maliquot", "--to", "5000000")
    assert code == EXIT_RESOURCE


def test_export(tmp_path):
    code, out, _ = call("export", "totative", "--to", "8")
    assert out == "1 0\n2 1\n3 2\n4 1\n5 3\n6 1\n7 4\n8 1\n"
    dest = tmp_path / "t.csv"
    code, out, _ = call("export", "totative", "--to", "3", "--format", "csv", "--out", str(dest))
    assert code == EXIT_OK and dest.read_bytes() == b"n,sg\n1,0\n2,1\n3,2\n"


def test_plot(tmp_path):
    dest = tmp_path / "p.svg"
    code, out, _ = call("plot", "saliquant", "--to", "100", "--out", str(dest))
    assert code == EXIT_OK and dest.read_text().startswith("<svg")
    assert "101 points" in out


def test_list():
    code, out, _ = call("list")
    lines = out.splitlines()
    assert len(lines) == 31
    assert lines[0].startswith("maliquot") and "full" in lines[0]


def _play(position, moves, first="human"):
    args = cli.build_parser().parse_args(["play", position, "--first", first])
    out = io.StringIO()
    code = cli.cmd_play(args, out, io.StringIO("".join(f"{m}\n" for m in moves)))
    return code, out.getvalue()


def test_play_computer_wins_from_n_position():
    code, out = _play("3@sub{1,2}", [], first="computer")
    assert code == EXIT_OK
    assert "computer plays 3@sub{1,2} -> 1" in out
    assert out.rstrip().endswith("the computer wins")


def test_play_human_wins_from_n_position():
    # 6 -> 4 leaves value 0; the computer answers 4 -> 3 and 3 -> 1 wins
    code, out = _play("6@sub{1,2}", ["2", "2"])
    assert "[2] 6@sub{1,2} -> 4" in out
    assert out.rstrip().endswith("you win")


def test_play_human_input_validation():
    code, out = _play("2@sub{1,2}", ["x", "7", "1"])
    assert out.count("enter a number from 1 to 1") == 2
    assert out.rstrip().endswith("you win")
    code, out = _play("2@sub{1,2}", [])
    assert code == EXIT_USAGE


@pytest.mark.parametrize("argv", [["sg", "maliquot", "8"], ["seq", "maliquot", "--to", "5"], ["list"],
                                  ["solve", "0-sum"], ["verify", "totient", "--to", "50"]])
def test_output_ends_with_newline(argv):
    _, out, _ = call(*argv)
    assert out.endswith("\n")


def test_console_entry_point(capsys):
    with pytest.raises(SystemExit) as e:
        import sys
        old = sys.argv
        sys.argv = ["arithgames", "sg", "saliquot", "8"]
        try:
            cli.main()
        finally:
            sys.argv = old
    assert e.value.code == 0
    assert capsys.readouterr().out.splitlines()[0] == "4"
