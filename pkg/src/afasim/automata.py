"""
afasim.automata - exact acceptance values and cutpoint membership

All arithmetic is on Fraction; nothing in here touches floating point.
"""
from fractions import Fraction
import logging

from afasim.exceptions import DimensionMismatch, StructuralError
from afasim.model import AfA, PFA, MembershipMode

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


def mat_apply(matrix, v):
    """
    Exact product M v.

    :raise DimensionMismatch: when the row length of `matrix` is not len(v)
    """
    if any(len(row) != len(v) for row in matrix):
        raise DimensionMismatch(
            "cannot apply a matrix with rows of length {} to a vector of length {}".format(
                sorted({len(row) for row in matrix}), len(v)
            )
        )
    return tuple(sum((a * b for a, b in zip(row, v)), ZERO) for row in matrix)


def mat_mul(m, n):
    """Exact product M N of square or conformable matrices."""
    if any(len(row) != len(n) for row in m):
        raise DimensionMismatch(
            "cannot multiply {} columns by {} rows".format(len(m[0]) if m else 0, len(n))
        )
    n_columns = tuple(zip(*n))
    return tuple(
        tuple(sum((a * b for a, b in zip(row, col)), ZERO) for col in n_columns)
        for row in m
    )


def identity(k):
    return tuple(tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k))


def chain_apply(matrices, v, word):
    """M_{w_n} ... M_{w_1} v for a mapping of symbol -> matrix."""
    for sym in word:
        v = mat_apply(matrices[sym], v)
    return v


def chain_matrix(matrices, word, k):
    """The matrix M_w = M_{w_n} ... M_{w_1} (identity for the empty word)."""
    product = identity(k)
    for sym in word:
        product = mat_mul(matrices[sym], product)
    return product


def l1(v):
    return sum((abs(e) for e in v), ZERO)


def weighting(v, flags):
    """
    |F v| / |v| with L1 norms; F is the 0/1 diagonal `flags`.

    The zero vector has no weighting; affine vectors never are zero.
    """
    total = l1(v)
    if total == 0:
        raise StructuralError("cannot weight the zero vector")
    return sum((abs(e) for e, f in zip(v, flags) if f), ZERO) / total


def pfa_value(pfa: PFA, word):
    """Accepting probability y^T M_{w_n} ... M_{w_1} x."""
    pfa.check_word(word)
    v = chain_apply(pfa.matrices, pfa.x, word)
    return sum((e for e, f in zip(v, pfa.y) if f), ZERO)


def afa_state(afa: AfA, word):
    """The affine state vector M_{w_n} ... M_{w_1} x; entries sum to 1."""
    afa.check_word(word)
    return chain_apply(afa.matrices, afa.x, word)


def afa_value(afa: AfA, word):
    """|F v| / |v| for v = afa_state(afa, word)."""
    return weighting(afa_state(afa, word), afa.F)


def value(machine, word):
    if isinstance(machine, PFA):
        return pfa_value(machine, word)
    if isinstance(machine, AfA):
        return afa_value(machine, word)
    raise TypeError("not an automaton: {!r}".format(machine))


def member(machine, word, mode: MembershipMode):
    return mode.accepts(value(machine, word))


def isolation_gap(machine, words, cutpoint):
    """
    min |f(w) - λ| over a finite word set.

    A result of 0 means the cutpoint is not isolated on this set.
    """
    words = list(words)
    if not words:
        raise StructuralError("isolation_gap needs at least one word")
    cutpoint = Fraction(cutpoint)
    gap = min(abs(value(machine, w) - cutpoint) for w in words)
    logger.debug(
        "isolation gap %s over %s words at cutpoint %s", gap, len(words), cutpoint
    )
    return gap


def scale_matrices(matrices, alpha):
    """Multiply every transition matrix by the nonzero rational `alpha`."""
    alpha = Fraction(alpha)
    if alpha == 0:
        raise StructuralError("scaling factor must be nonzero")
    return {
        sym: tuple(tuple(alpha * e for e in row) for row in m)
        for sym, m in matrices.items()
    }
