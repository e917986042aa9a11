"""
afasim.residue - residue number system over the odd primes 3, 5, 7, ...

Integers in [0, P_r) are held as their least nonnegative residues modulo the
first r odd primes. 2 is excluded so that P_r is odd, which is what makes the
parity test behind residue_compare work.
"""
import enum
import functools
import itertools
import logging
import math

import attr
import gmpy2

from afasim.exceptions import BasisMismatch, StructuralError
from afasim.space import observe

logger = logging.getLogger(__name__)


class Order(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


def iter_odd_primes():
    """3, 5, 7, 11, ... generated on demand."""
    p = 3
    while True:
        yield p
        p = int(gmpy2.next_prime(p))


def _primes_validator(instance, attribute, value):
    if not value:
        raise StructuralError("a prime basis needs at least one prime")
    for p in value:
        if p == 2 or not gmpy2.is_prime(p):
            raise StructuralError("{} is not an odd prime".format(p))
    if any(a >= b for a, b in zip(value, value[1:])):
        raise StructuralError("basis primes must be strictly increasing")


@attr.s(frozen=True)
class PrimeBasis:
    """The tuple (3, 5, 7, ..., p_r) and its product P_r."""

    primes = attr.ib(converter=tuple, validator=_primes_validator)

    @property
    def r(self):
        return len(self.primes)

    @property
    def largest(self):
        return self.primes[-1]

    @property
    def product(self):
        return math.prod(self.primes)

    def __str__(self):
        if self.r <= 4:
            return "({})".format(", ".join(str(p) for p in self.primes))
        return "({}, {}, ..., {})".format(self.primes[0], self.primes[1], self.largest)


@functools.lru_cache(maxsize=64)
def prime_basis(r):
    """The first `r` odd primes."""
    if r < 1:
        raise StructuralError("prime basis size must be >= 1, got {}".format(r))
    return PrimeBasis(itertools.islice(iter_odd_primes(), r))


def basis_for_bound(bound):
    """
    Smallest basis with P_r > `bound`, so that any two integers in
    [0, bound] are told apart by their residues.
    """
    if bound < 0:
        raise StructuralError("bound must be nonnegative, got {}".format(bound))
    product = 1
    for r, p in enumerate(iter_odd_primes(), start=1):
        product *= p
        if product > bound:
            return prime_basis(r)


def _digits_validator(instance, attribute, value):
    if len(value) != instance.basis.r:
        raise StructuralError(
            "{} digits for a basis of {} primes".format(len(value), instance.basis.r)
        )
    for d, p in zip(value, instance.basis.primes):
        if not 0 <= d < p:
            raise StructuralError("digit {} out of range for prime {}".format(d, p))


@attr.s(frozen=True)
class Residues:
    """An integer class modulo P_r, one digit per prime of the basis."""

    basis = attr.ib(validator=attr.validators.instance_of(PrimeBasis))
    digits = attr.ib(converter=tuple, validator=_digits_validator)


@attr.s(frozen=True)
class ResidueMatrix:
    """An integer matrix reduced entrywise modulo each prime of the basis."""

    basis = attr.ib(validator=attr.validators.instance_of(PrimeBasis))
    per_prime = attr.ib(converter=tuple)

    def for_prime(self, index):
        return self.per_prime[index]


def reduce(x, basis):
    return Residues(basis, (x % p for p in basis.primes))


def reduce_matrix(matrix, basis):
    return ResidueMatrix(
        basis,
        (tuple(tuple(a % p for a in row) for row in matrix) for p in basis.primes),
    )


def _same_basis(*residues):
    basis = residues[0].basis
    for res in residues[1:]:
        if res.basis != basis:
            raise BasisMismatch(
                "residues over {} and {} cannot be combined".format(basis, res.basis)
            )
    return basis


def residue_add(a, b):
    basis = _same_basis(a, b)
    return Residues(
        basis, ((x + y) % p for x, y, p in zip(a.digits, b.digits, basis.primes))
    )


def residue_sub(a, b):
    basis = _same_basis(a, b)
    return Residues(
        basis, ((x - y) % p for x, y, p in zip(a.digits, b.digits, basis.primes))
    )


def residue_mul(a, b):
    basis = _same_basis(a, b)
    return Residues(
        basis, ((x * y) % p for x, y, p in zip(a.digits, b.digits, basis.primes))
    )


def residue_scale(a, c):
    return Residues(a.basis, ((x * c) % p for x, p in zip(a.digits, a.basis.primes)))


def crt_reconstruct(res):
    """The unique x in [0, P_r) with x = digit_i (mod p_i) for every prime."""
    modulus = res.basis.product
    x = 0
    for d, p in zip(res.digits, res.basis.primes):
        cofactor = modulus // p
        x += d * cofactor * pow(cofactor, -1, p)
    return x % modulus


def residue_mod(res, modulus, meter=None):
    """
    x mod M for the x in [0, P_r) represented by `res`, without building x.

    Mixed-radix (Garner) conversion in one sequential pass over the primes:
    the i-th mixed-radix digit is read off the working residues, which are
    then shifted down by that digit, while the accumulator and the running
    radix are kept modulo M.
    """
    if modulus < 2:
        raise StructuralError("modulus must be >= 2, got {}".format(modulus))
    primes = res.basis.primes
    work = list(res.digits)
    acc = 0
    radix = 1 % modulus
    for i, p in enumerate(primes):
        digit = work[i]
        acc = observe(meter, acc + digit * radix) % modulus
        radix = observe(meter, radix * p) % modulus
        for j in range(i + 1, len(primes)):
            q = primes[j]
            work[j] = observe(meter, (work[j] - digit) * pow(p, -1, q)) % q
    return acc


def residue_compare(xres, yres, meter=None):
    """
    Order of x and y in [0, P_r - 1] from residues alone.

    With z = (x - y) mod P_r and P_r odd, x >= y exactly when x - y and z
    have the same parity.
    """
    _same_basis(xres, yres)
    if xres.digits == yres.digits:
        return Order.EQ
    zres = residue_sub(xres, yres)
    x_parity = residue_mod(xres, 2, meter)
    y_parity = residue_mod(yres, 2, meter)
    z_parity = residue_mod(zres, 2, meter)
    if (x_parity - y_parity) % 2 == z_parity:
        return Order.GT
    return Order.LT


def residue_abs_diff(xres, yres, meter=None):
    """Residues of |x - y|, choosing the subtraction order by residue_compare."""
    if residue_compare(xres, yres, meter) is Order.LT:
        return residue_sub(yres, xres)
    return residue_sub(xres, yres)


def mod_mat_apply(matrix, v, p, meter=None):
    """M v mod p with every partial sum reduced, for entries already in [0, p)."""
    out = []
    for row in matrix:
        acc = 0
        for a, b in zip(row, v):
            acc = observe(meter, acc + a * b) % p
        out.append(acc)
    return tuple(out)

