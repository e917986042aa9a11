"""
afasim.model - data model for automata, words and acceptance modes

Vectors are tuples of Fraction. A k x k matrix is a tuple of k rows; column j
is the image of basis state j, so stochastic and affine matrices are
recognised by their column sums.
"""
import enum
from fractions import Fraction
import logging

import attr

from afasim.exceptions import InvalidAutomaton, StructuralError, UnknownSymbol
from afasim.util import format_rational, parse_rational

logger = logging.getLogger(__name__)

Rational = Fraction


class ConvertibleEnum(enum.Enum):
    @classmethod
    def from_any(cls, v):
        """Passable as an attr converter."""
        if isinstance(v, cls):
            return v
        return cls(str(v).lower())

    def __str__(self):
        return str(self.value)


class MachineKind(ConvertibleEnum):
    PFA = "pfa"
    AFA = "afa"


class CutpointKind(ConvertibleEnum):
    STRICT = "strict"
    EXCLUSIVE = "exclusive"


def to_vector(values):
    return tuple(parse_rational(v) for v in values)


def to_matrix(rows):
    return tuple(to_vector(row) for row in rows)


def to_flags(values):
    return tuple(int(v) for v in values)


def columns(matrix):
    return tuple(zip(*matrix))


def is_affine_vector(v):
    return sum(v, Fraction(0)) == 1


def is_stochastic_vector(v):
    return is_affine_vector(v) and all(e >= 0 for e in v)


def is_affine_matrix(m):
    return all(is_affine_vector(col) for col in columns(m))


def is_stochastic_matrix(m):
    return all(is_stochastic_vector(col) for col in columns(m))


def check_square(matrix, k, name):
    if len(matrix) != k or any(len(row) != k for row in matrix):
        raise InvalidAutomaton(
            "{} must be {}x{}, got {} rows of lengths {}".format(
                name, k, k, len(matrix), sorted({len(row) for row in matrix})
            )
        )


def check_affine_vector(v, name="initial vector"):
    if not is_affine_vector(v):
        raise InvalidAutomaton(
            "{} sums to {}, expected 1".format(
                name, format_rational(sum(v, Fraction(0)))
            )
        )


def check_stochastic_vector(v, name="initial vector"):
    if is_stochastic_vector(v):
        return
    for i, e in enumerate(v):
        if e < 0:
            raise InvalidAutomaton(
                "{} has negative entry {} at position {}".format(
                    name, format_rational(e), i
                )
            )
    check_affine_vector(v, name)


def check_affine_matrix(m, name):
    if is_affine_matrix(m):
        return
    for j, col in enumerate(columns(m)):
        check_affine_vector(col, "column {} of {}".format(j, name))


def check_stochastic_matrix(m, name):
    if is_stochastic_matrix(m):
        return
    for j, col in enumerate(columns(m)):
        check_stochastic_vector(col, "column {} of {}".format(j, name))


def check_flags(flags, name="final vector"):
    for i, f in enumerate(flags):
        if f not in (0, 1):
            raise InvalidAutomaton(
                "{} entry {} is {}, expected 0 or 1".format(name, i, f)
            )


def _alphabet_validator(instance, attribute, value):
    if not value:
        raise InvalidAutomaton("alphabet must not be empty")
    if len(set(value)) != len(value):
        raise InvalidAutomaton("alphabet has repeated symbols: {}".format(value))


@attr.s(frozen=True)
class _Machine:
    """Shared shape of PFA and AfA: x, one matrix per symbol, 0/1 flags."""

    kind = None

    alphabet = attr.ib(converter=tuple, validator=_alphabet_validator)
    x = attr.ib(converter=to_vector)
    matrices = attr.ib(
        converter=lambda ms: {sym: to_matrix(m) for sym, m in dict(ms).items()},
        hash=False,
    )
    flags = attr.ib(converter=to_flags)

    @property
    def k(self):
        return len(self.x)

    def __attrs_post_init__(self):
        if len(self.flags) != self.k:
            raise InvalidAutomaton(
                "final flags have length {}, expected {}".format(len(self.flags), self.k)
            )
        check_flags(self.flags)
        if set(self.matrices) != set(self.alphabet):
            raise InvalidAutomaton(
                "matrices given for {}, alphabet is {}".format(
                    sorted(self.matrices), list(self.alphabet)
                )
            )
        for sym in self.alphabet:
            check_square(self.matrices[sym], self.k, "matrix {}".format(sym))
        self._check_values()

    def _check_values(self):
        raise NotImplementedError

    def matrix(self, symbol):
        try:
            return self.matrices[symbol]
        except KeyError:
            raise UnknownSymbol(
                "symbol {!r} is not in the alphabet {}".format(symbol, list(self.alphabet))
            ) from None

    def check_word(self, word):
        for sym in word:
            self.matrix(sym)

    @property
    def is_unary(self):
        return len(self.alphabet) == 1


@attr.s(frozen=True)
class PFA(_Machine):
    """
    k-state probabilistic automaton (x, {M_a}, y): stochastic initial vector,
    column-stochastic matrices and a 0/1 final vector y (held in ``flags``).
    """

    kind = MachineKind.PFA

    @property
    def y(self):
        return self.flags

    def _check_values(self):
        check_stochastic_vector(self.x)
        for sym in self.alphabet:
            check_stochastic_matrix(self.matrices[sym], "matrix {}".format(sym))


@attr.s(frozen=True)
class AfA(_Machine):
    """
    k-state affine automaton (x, {M_a}, F): affine initial vector, affine
    matrices and the diagonal of the final projection F (held in ``flags``).
    """

    kind = MachineKind.AFA

    @property
    def F(self):
        return self.flags

    def _check_values(self):
        check_affine_vector(self.x)
        for sym in self.alphabet:
            check_affine_matrix(self.matrices[sym], "matrix {}".format(sym))


@attr.s(frozen=True)
class Word:
    """
    A finite sequence of symbols, possibly empty.

    Symbols are single characters unless a separator is given.
    """

    symbols = attr.ib(factory=tuple, converter=tuple)

    @classmethod
    def from_string(cls, text, sep=None):
        if sep is None:
            return cls(tuple(text))
        if not sep:
            raise StructuralError("word separator must not be empty")
        return cls(tuple(s for s in text.split(sep) if s))

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __add__(self, other):
        return type(self)(self.symbols + tuple(other))

    def __str__(self):
        return "".join(self.symbols) if self.symbols else "ε"


def _cutpoint_validator(instance, attribute, value):
    if instance.kind is CutpointKind.STRICT and not 0 <= value < 1:
        raise StructuralError(
            "strict cutpoint must lie in [0, 1), got {}".format(format_rational(value))
        )
    if instance.kind is CutpointKind.EXCLUSIVE and not 0 <= value <= 1:
        raise StructuralError(
            "exclusive cutpoint must lie in [0, 1], got {}".format(format_rational(value))
        )


@attr.s(frozen=True)
class MembershipMode:
    """How an acceptance value is turned into membership: f > λ or f ≠ λ."""

    kind = attr.ib(
        validator=attr.validators.instance_of(CutpointKind),
        converter=CutpointKind.from_any,
    )
    cutpoint = attr.ib(converter=parse_rational, validator=_cutpoint_validator)

    @classmethod
    def strict(cls, cutpoint=Fraction(1, 2)):
        return cls(CutpointKind.STRICT, cutpoint)

    @classmethod
    def exclusive(cls, cutpoint=Fraction(1, 2)):
        return cls(CutpointKind.EXCLUSIVE, cutpoint)

    def accepts(self, value):
        if self.kind is CutpointKind.STRICT:
            return value > self.cutpoint
        return value != self.cutpoint
