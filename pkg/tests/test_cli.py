"""
Command line tests drive afasim.cli.run in-process, plus one run through
``python -m afasim``.
"""
from pathlib import Path
import io
import os
import subprocess
import sys

import pytest

import afasim.cli
import afasim.logspace
import afasim.selftest
from afasim.space import SpaceTrace


def run(*argv):
    out = io.StringIO()
    code = afasim.cli.run(list(argv), out=out)
    return code, out.getvalue()


def test_eval():
    assert run("eval", "--automaton", "halving_pfa", "--word", "aa") == (0, "3/4 (0.75)\n")
    assert run("eval", "--automaton", "two_thirds_afa", "--word", "") == (
        0,
        "2/3 (0.666666666666666667)\n",
    )


@pytest.mark.parametrize(
    "word, mode, expected",
    [("a", "strict", "false"), ("aa", "strict", "true"), ("a", "exclusive", "false")],
)
def test_member(word, mode, expected):
    code, out = run(
        "member", "--automaton", "halving_pfa", "--word", word, "--mode", mode
    )
    assert code == 0
    assert out == expected + "\n"


def test_member_cutpoint():
    code, out = run(
        "member", "--automaton", "halving_pfa", "--word", "aa", "--cutpoint", "3/4"
    )
    assert (code, out) == (0, "false\n")


@pytest.mark.parametrize(
    "automaton, word",
    [
        ("halving_pfa", ""),
        ("halving_pfa", "a"),
        ("halving_pfa", "aaa"),
        ("three_state_pfa", "abba"),
        ("two_thirds_afa", "ab"),
        ("unary_afa", "aaaa"),
    ],
)
def test_rns_agrees_with_member(automaton, word):
    _, member = run("member", "--automaton", automaton, "--word", word)
    code, out = run("rns", "--automaton", automaton, "--word", word, "--trace-space")
    assert code == 0
    decision, primes, space = out.splitlines()
    assert decision + "\n" == member
    assert primes.startswith("primes ")
    assert space.startswith("space n={} ".format(len(word)))


def test_rns_space_bound_exit(monkeypatch):
    def wide(decision):
        SpaceTrace(n=1, r=1, largest_prime=3, max_register_bits=64, passes=1).check()

    monkeypatch.setattr(afasim.logspace, "space_trace", wide)
    code, _ = run("rns", "--automaton", "halving_pfa", "--word", "a")
    assert code == 3


def test_embed():
    code, out = run("embed", "--automaton", "two_thirds_afa")
    assert code == 0
    lines = out.splitlines()
    assert lines[:4] == ["states 4", "m 1", "g 1", "xscale 1"]
    assert "matrix B_a" in lines
    assert "matrix D_b" in lines


def test_density():
    code, out = run("density", "--lang", "poly:0,0,0,1", "--horizon", "1000")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "horizon,count,density,density_exact,running_min"
    assert lines[-1].startswith("1000,11,")


def test_equidist():
    code, out = run(
        "equidist",
        "--alpha",
        "1/3",
        "--precision",
        "4",
        "--count",
        "6",
        "--interval",
        "0,1/2",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "1,0.3333,1/3"
    assert lines[-1] == "# ratio 2/3 (0.666666666666666667) volume 1/2"


def test_gseq():
    code, out = run("gseq", "--automaton", "unary_afa", "--nmax", "3")
    assert code == 0
    assert len(out.splitlines()) == 5


@pytest.mark.parametrize(
    "argv",
    [
        ("eval", "--automaton", "halving_pfa", "--word", "ab"),
        ("eval", "--automaton", "no/such/file.txt", "--word", "a"),
        ("gseq", "--automaton", "two_thirds_afa", "--nmax", "3"),
        ("embed", "--automaton", "halving_pfa"),
        ("density", "--lang", "poly:0,-1", "--horizon", "10"),
        ("member", "--automaton", "halving_pfa", "--word", "a", "--cutpoint", "1"),
        ("member", "--automaton", "halving_pfa", "--word", "a", "--cutpoint", "0.5"),
        ("eval", "--automaton", "halving_pfa", "--word", "aa", "--sep", ""),
        ("bogus",),
    ],
)
def test_structural_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2
    assert capsys.readouterr().err


def test_invalid_file_reports_line(capsys):
    bad = Path(os.path.dirname(__file__)) / "automaton-text" / "bad_column.txt"
    code, _ = run("eval", "--automaton", str(bad), "--word", "a")
    assert code == 2
    assert "line 7: column 0 of matrix a sums to 3/2" in capsys.readouterr().err


def test_selftest_quick():
    code, out = run("selftest", "--suite", "crt_roundtrip", "residue_mod")
    assert code == 0
    assert out.splitlines() == [
        "PASS crt_roundtrip: 1155 checked, 0 failed",
        "PASS residue_mod: 4620 checked, 0 failed",
    ]


def test_selftest_failure_exit(monkeypatch):
    def broken(self):
        result = afasim.selftest.SuiteResult("crt_roundtrip")
        result.check(False, lambda: "forced")
        return result

    monkeypatch.setattr(afasim.selftest.SelfTestRecipe, "crt_roundtrip", broken)
    code, out = run("selftest", "--suite", "crt_roundtrip")
    assert code == 1
    assert out.startswith("FAIL crt_roundtrip")


def test_python_m_afasim(tmp_path):
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "afasim",
            "--log-dir",
            str(tmp_path),
            "eval",
            "--automaton",
            "halving_pfa",
            "--word",
            "aa",
        ],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
        check=True,
    )
    assert proc.stdout.decode().strip() == "3/4 (0.75)"
    assert list(tmp_path.glob("afasim.*.log"))
