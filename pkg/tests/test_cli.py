import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from qtopo import cli
from qtopo.cli import SemanticError, parse_input, serialize
from qtopo.textfmt import ParseError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("command, expected", [
    ("habiro-eval level=5 n=3 fs=[1]", "1\n"),
    ("weight data=epsilon diagram=theta", "6\n"),
    ("cob-check word g=1 twists=a1", "homology_cobordism=true homology_cylinder=false torelli=false\n"),
])
def test_documented_examples(capsys, command, expected):
    code, out, _ = run(capsys, "--format", "machine", *command.split())
    assert (code, out) == (0, expected)


def test_leading_habiro_word_is_accepted(capsys):
    assert run(capsys, "--format", "machine", "habiro", "habiro-eval", "level=5", "n=3", "fs=[1]")[:2] == (0, "1\n")


def test_text_format_is_labelled(capsys):
    code, out, _ = run(capsys, "weight", "data=epsilon", "diagram=theta")
    assert code == 0 and out.strip().endswith(": 6")


def test_syntax_error_has_position(capsys):
    code, _, err = run(capsys, "weight", "data=epsilon", "diagram=thetx")
    assert code == 2
    assert "syntax error: line 1, column" in err


def test_semantic_error_is_distinct(capsys):
    code, _, err = run(capsys, "cob-compose", "left=word", "g=1", "twists=a1", "right=word", "g=2", "twists=a1")
    assert code == 2 and err.startswith("semantic error")
    with pytest.raises(SemanticError):
        parse_input("cob-compose left=word g=1 twists=a1 right=word g=2 twists=a1")
    with pytest.raises(ParseError):
        parse_input("cob-compose left=word g=1 twists=zz right=word g=1 twists=a1")


@pytest.mark.parametrize("argv", [
    ["verify", "no-such-suite"],
    ["no-such-verb"],
    ["habiro-eval", "level=5", "n=9", "fs=[1]"],
    ["weight", "data=epsilon", "degree=1", "diagram=theta^2"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_verify_exit_zero_and_per_property_lines(capsys):
    code, out, _ = run(capsys, "--format", "machine", "verify", "smith")
    assert code == 0
    assert out.splitlines() == ["property=smith-form-contract status=pass"]


def test_verify_failure_exit_one(capsys, monkeypatch):
    from qtopo.verify import PropertyResult
    monkeypatch.setattr(cli, "run_suite", lambda name: [PropertyResult("broken thing", False, "x=1")])
    code, out, _ = run(capsys, "--format", "machine", "verify", "smith")
    assert code == 1
    assert out == 'property=broken-thing status=fail counterexample="x=1"\n'


def test_run_file(tmp_path, capsys):
    f = tmp_path / "cmds.txt"
    f.write_text("# comment\nweight data=epsilon diagram=theta^2\n\nhabiro-taylor level=3 fs=[0,1]\n")
    code, out, _ = run(capsys, "--format", "machine", "run", str(f))
    assert (code, out) == (0, "36\n1,-1,0,0\n")


def test_run_file_reports_line(tmp_path, capsys):
    f = tmp_path / "cmds.txt"
    f.write_text("weight data=epsilon diagram=theta\nweight data=epsilon diagram=oops\n")
    code, out, err = run(capsys, "--format", "machine", "run", str(f))
    assert code == 2 and out == "6\n" and "line 2" in err


def test_defaults_flags(capsys):
    code, out, _ = run(capsys, "--format", "machine", "--level", "2", "habiro-taylor", "fs=[0,1]")
    assert out == "1,-1,0\n"


def test_per_verb_help(capsys):
    with pytest.raises(SystemExit):
        cli.build_parser().parse_args(["moyal", "--help"])
    assert "op=star" in capsys.readouterr().out


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "qtopo", "--format", "machine", "moyal", "p=x[a1]", "q=x[b1]",
                        "op=commutator"], capture_output=True, text=True)
    assert (r.returncode, r.stdout) == (0, "t\n")


ROUND_TRIP = [
    "habiro-eval level=5 n=3 fs=[1]",
    "habiro-taylor level=4 fs=[0;1,-1;2]",
    "diagram-reduce degree=2 theta + 2*theta^2",
    "weight data=sl2 series=3 diagram=1 - 1/2*theta",
    "grouplike trunc=3 exp(theta)",
    "tree-bracket g=2 left=tree leaves=(a1,a2) shape=(0,1) right=-2*tree leaves=(b2,b2,a1) shape=(0,1,2)",
    "moyal g=2 K=3 op=poisson p=x[a1]^2 - t q=x[b2]*x[a2]",
    "cob-compose left=word g=1 twists=a1,-b1 right=cobordism g=1 rel=[[0],[0],[2]] "
    "mplus=[[1,0],[0,1],[0,0]] mminus=[[1,0],[0,1],[0,0]]",
    "cob-check word g=2 twists=",
    "verify all",
]


@pytest.mark.parametrize("text", ROUND_TRIP)
def test_round_trip(text):
    cmd = parse_input(text)
    again = parse_input(serialize(cmd))
    assert again == cmd
    assert serialize(again) == serialize(cmd)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip_random_objects(seed):
    from qtopo.verify import random_observable, random_word
    from qtopo import textfmt
    rng = random.Random(seed)
    g = rng.randint(1, 3)
    p = textfmt.fmt_observable(random_observable(rng, g, 4))
    q = textfmt.fmt_observable(random_observable(rng, g, 4))
    w = ",".join(random_word(rng, g, rng.randint(0, 5)))
    fs = ";".join(",".join(str(rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))) for _ in range(3))
    for text in (f"moyal g={g} K=4 p={p} q={q}", f"cob-check word g={g} twists={w}",
                 f"habiro-taylor level=5 fs=[{fs}]"):
        cmd = parse_input(text)
        assert parse_input(serialize(cmd)) == cmd
