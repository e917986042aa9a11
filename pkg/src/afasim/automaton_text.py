"""
afasim.automaton_text - read and write the line-oriented automaton format

    afa v1            # or: pfa v1
    states 2
    alphabet a b
    initial 2/1 -1/1
    final 1 0         # AfA: diagonal of F; PFA: the vector y
    matrix a
    1/1 -1/1
    0/1 2/1
    matrix b
    ...

Rows are listed top to bottom, entries left to right; column j is the image
of basis state j. ``#`` starts a comment. The first violated invariant is
reported with its line number.
"""
import logging
from pathlib import Path

from importlib_resources import files

import afasim.data
from afasim.exceptions import AutomatonSyntaxError, InvalidAutomaton
from afasim.model import (
    AfA,
    MachineKind,
    PFA,
    check_affine_matrix,
    check_affine_vector,
    check_flags,
    check_stochastic_matrix,
    check_stochastic_vector,
)
from afasim.util import format_rational, parse_rational

logger = logging.getLogger(__name__)

FORMAT_VERSION = "v1"
MACHINE_TYPES = {MachineKind.PFA: PFA, MachineKind.AFA: AfA}


def _content_lines(text):
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.partition("#")[0].strip()
        if line:
            yield lineno, line.split()


def _rationals(fields, lineno, expect):
    if len(fields) != expect:
        raise AutomatonSyntaxError(
            "expected {} entries, found {}".format(expect, len(fields)), lineno
        )
    try:
        return tuple(parse_rational(f) for f in fields)
    except ValueError as ve:
        raise AutomatonSyntaxError(str(ve), lineno) from ve


class _Reader:
    """Accumulates sections of one automaton text, validating as it goes."""

    def __init__(self, lines):
        self.lines = lines
        self.kind = None
        self.k = None
        self.alphabet = None
        self.x = None
        self.flags = None
        self.matrices = {}
        self.last_lineno = 0

    def need_states(self, lineno):
        if self.k is None:
            raise AutomatonSyntaxError("'states' must come before this line", lineno)
        return self.k

    def header(self, lineno, fields):
        if len(fields) != 2 or fields[1] != FORMAT_VERSION:
            raise AutomatonSyntaxError(
                "expected header 'pfa {0}' or 'afa {0}'".format(FORMAT_VERSION), lineno
            )
        try:
            self.kind = MachineKind.from_any(fields[0])
        except ValueError:
            raise AutomatonSyntaxError(
                "unknown automaton type {!r}".format(fields[0]), lineno
            ) from None

    def states(self, lineno, fields):
        if len(fields) != 1 or not fields[0].isdigit() or int(fields[0]) < 1:
            raise AutomatonSyntaxError("'states' takes one positive integer", lineno)
        self.k = int(fields[0])

    def alphabet_(self, lineno, fields):
        if not fields:
            raise InvalidAutomaton("alphabet must not be empty", lineno)
        if len(set(fields)) != len(fields):
            raise InvalidAutomaton("alphabet has repeated symbols", lineno)
        self.alphabet = tuple(fields)

    def initial(self, lineno, fields):
        x = _rationals(fields, lineno, self.need_states(lineno))
        try:
            if self.kind is MachineKind.PFA:
                check_stochastic_vector(x)
            else:
                check_affine_vector(x)
        except InvalidAutomaton as ia:
            raise ia.at_line(lineno) from None
        self.x = x

    def final(self, lineno, fields):
        k = self.need_states(lineno)
        if len(fields) != k or not all(f.lstrip("-").isdigit() for f in fields):
            raise AutomatonSyntaxError("'final' takes {} integer flags".format(k), lineno)
        flags = tuple(int(f) for f in fields)
        try:
            check_flags(flags)
        except InvalidAutomaton as ia:
            raise ia.at_line(lineno) from None
        self.flags = flags

    def matrix(self, lineno, fields, rows):
        k = self.need_states(lineno)
        if self.alphabet is None:
            raise AutomatonSyntaxError("'alphabet' must come before 'matrix'", lineno)
        if len(fields) != 1 or fields[0] not in self.alphabet:
            raise InvalidAutomaton(
                "'matrix' names one symbol of the alphabet {}".format(list(self.alphabet)),
                lineno,
            )
        sym = fields[0]
        if sym in self.matrices:
            raise InvalidAutomaton("matrix {} given twice".format(sym), lineno)
        matrix = []
        for _ in range(k):
            try:
                row_lineno, row = next(rows)
            except StopIteration:
                raise AutomatonSyntaxError(
                    "matrix {} has fewer than {} rows".format(sym, k), lineno
                ) from None
            matrix.append(_rationals(row, row_lineno, k))
            self.last_lineno = row_lineno
        matrix = tuple(matrix)
        try:
            if self.kind is MachineKind.PFA:
                check_stochastic_matrix(matrix, "matrix {}".format(sym))
            else:
                check_affine_matrix(matrix, "matrix {}".format(sym))
        except InvalidAutomaton as ia:
            raise ia.at_line(lineno) from None
        self.matrices[sym] = matrix

    def read(self):
        rows = iter(self.lines)
        for lineno, fields in rows:
            self.last_lineno = lineno
            keyword, args = fields[0], fields[1:]
            if self.kind is None:
                self.header(lineno, fields)
            elif keyword == "states":
                self.states(lineno, args)
            elif keyword == "alphabet":
                self.alphabet_(lineno, args)
            elif keyword == "initial":
                self.initial(lineno, args)
            elif keyword == "final":
                self.final(lineno, args)
            elif keyword == "matrix":
                self.matrix(lineno, args, rows)
            else:
                raise AutomatonSyntaxError("unknown keyword {!r}".format(keyword), lineno)
        return self.build()

    def build(self):
        end = self.last_lineno
        if self.kind is None:
            raise AutomatonSyntaxError("empty automaton text", end)
        for name, value in (
            ("states", self.k),
            ("alphabet", self.alphabet),
            ("initial", self.x),
            ("final", self.flags),
        ):
            if value is None:
                raise AutomatonSyntaxError("missing '{}'".format(name), end)
        missing = [sym for sym in self.alphabet if sym not in self.matrices]
        if missing:
            raise InvalidAutomaton("no matrix for symbols {}".format(missing), end)
        try:
            return MACHINE_TYPES[self.kind](
                alphabet=self.alphabet,
                x=self.x,
                matrices=self.matrices,
                flags=self.flags,
            )
        except InvalidAutomaton as ia:
            raise ia.at_line(end) from None


def loads(text):
    """Parse automaton text into a PFA or AfA."""
    machine = _Reader(list(_content_lines(text))).read()
    logger.debug(
        "Load %s with %s states over %s", machine.kind, machine.k, machine.alphabet
    )
    return machine


def load(path):
    return loads(Path(path).read_text())


def vector_line(values):
    return " ".join(format_rational(v) for v in values)


def dump_matrix(label, matrix):
    """``matrix <label>`` followed by one line per row."""
    return ["matrix {}".format(label)] + [vector_line(row) for row in matrix]


def dumps(machine):
    lines = [
        "{} {}".format(machine.kind, FORMAT_VERSION),
        "states {}".format(machine.k),
        "alphabet {}".format(" ".join(machine.alphabet)),
        "initial {}".format(vector_line(machine.x)),
        "final {}".format(" ".join(str(f) for f in machine.flags)),
    ]
    for sym in machine.alphabet:
        lines.extend(dump_matrix(sym, machine.matrices[sym]))
    return "\n".join(lines) + "\n"


def bundled_names():
    """Names of the sample automata shipped in afasim.data."""
    return sorted(
        p.name[: -len(".txt")]
        for p in files(afasim.data).iterdir()
        if p.name.endswith(".txt")
    )


def load_bundled(name):
    return loads(files(afasim.data).joinpath(name + ".txt").read_text())


def resolve(ref):
    """Load `ref` as a file path, falling back to a bundled sample name."""
    path = Path(ref)
    if not path.exists() and ref in bundled_names():
        logger.debug("Using bundled automaton %r", ref)
        return load_bundled(ref)
    return load(path)
