"""
afasim.randomized - seeded random automata and word enumeration
"""
from fractions import Fraction
import itertools

from afasim.model import AfA, PFA

BINARY = ("a", "b")


def random_stochastic_vector(rng, k, max_den):
    """A random composition of a random denominator into k parts."""
    den = rng.randint(1, max_den)
    cuts = sorted(rng.randint(0, den) for _ in range(k - 1))
    parts = [b - a for a, b in zip([0, *cuts], [*cuts, den])]
    return tuple(Fraction(p, den) for p in parts)


def random_affine_vector(rng, k, max_den, entry_range=(-3, 3)):
    """Entries with denominators <= max_den summing to 1, all inside entry_range."""
    lo, hi = entry_range
    while True:
        head = []
        for _ in range(k - 1):
            den = rng.randint(1, max_den)
            head.append(Fraction(rng.randint(lo * den, hi * den), den))
        last = 1 - sum(head, Fraction(0))
        if lo <= last <= hi:
            return (*head, last)


def _from_columns(cols):
    return tuple(zip(*cols))


def random_pfa(rng, k, alphabet=BINARY, max_den=10):
    return PFA(
        alphabet=alphabet,
        x=random_stochastic_vector(rng, k, max_den),
        matrices={
            sym: _from_columns(
                [random_stochastic_vector(rng, k, max_den) for _ in range(k)]
            )
            for sym in alphabet
        },
        flags=[rng.randint(0, 1) for _ in range(k)],
    )


def random_afa(rng, k, alphabet=BINARY, max_den=10, entry_range=(-3, 3)):
    return AfA(
        alphabet=alphabet,
        x=random_affine_vector(rng, k, max_den, entry_range),
        matrices={
            sym: _from_columns(
                [random_affine_vector(rng, k, max_den, entry_range) for _ in range(k)]
            )
            for sym in alphabet
        },
        flags=[rng.randint(0, 1) for _ in range(k)],
    )


def all_words(alphabet, max_len):
    """Every word of length 0..max_len, shortest first."""
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)
