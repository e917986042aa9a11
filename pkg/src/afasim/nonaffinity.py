"""
afasim.nonaffinity - desk-scale checks of the non-affinity criteria

Unary languages are handled through their member lengths: a^n is in L when
n is. The experiments here measure lower density over a grid of horizons,
equidistribution of ((r + mN) alpha) mod 1, the acceptance gap g(n) of a
unary AfA and the first-order expansion of |A + z|.

Everything is exact except two places: Weyl sequences for irrational alpha
(gmpy2 mpfr at a working precision derived from the requested digits) and
abs_expansion_residual (complex floats).
"""
import bisect
import csv
from fractions import Fraction
import itertools
import logging
import math
import re
import warnings

import attr
import gmpy2

from afasim.automata import ZERO, mat_apply
from afasim.exceptions import (
    InsufficientPrecision,
    LowDegreePolynomial,
    NotUnary,
    StructuralError,
)
from afasim.util import RATIONAL_RE, format_decimal, format_rational, parse_rational

logger = logging.getLogger(__name__)

GUARD_DIGITS = 15
DECIMAL_RE = re.compile(r"^\s*-?\d+\.(\d+)\s*$")
SQRT_RE = re.compile(r"^\s*sqrt:(\d+)\s*$")


@attr.s(frozen=True)
class UnaryLanguage:
    """
    A language over {a}, given by the lengths of its words.

    :param predicate: n -> bool, membership of a^n
    :param generator: optional zero-argument callable yielding member lengths
        in increasing order
    """

    name = attr.ib()
    predicate = attr.ib(repr=False)
    generator = attr.ib(default=None, repr=False)

    def __contains__(self, n):
        return bool(self.predicate(n))

    def members(self, horizon):
        """Member lengths n <= horizon in increasing order."""
        if self.generator is None:
            return (n for n in range(horizon + 1) if self.predicate(n))
        return itertools.takewhile(lambda n: n <= horizon, self.generator())


def full_language():
    return UnaryLanguage("all", lambda n: True, lambda: itertools.count())


def empty_language():
    return UnaryLanguage("empty", lambda n: False, lambda: iter(()))


def residue_class_language(modulus, remainder):
    """Lengths n with n = remainder (mod modulus)."""
    if modulus < 1 or not 0 <= remainder < modulus:
        raise StructuralError(
            "need modulus >= 1 and 0 <= remainder < modulus, got {} {}".format(
                modulus, remainder
            )
        )
    return UnaryLanguage(
        "mod:{},{}".format(modulus, remainder),
        lambda n: n % modulus == remainder,
        lambda: itertools.count(remainder, modulus),
    )


def poly_eval(coefficients, n):
    """Horner evaluation; coefficients are listed from the constant term up."""
    total = 0
    for c in reversed(coefficients):
        total = total * n + c
    return total


def gen_poly_lang(coefficients):
    """
    {a^P(n) : n >= 0} for P with nonnegative integer coefficients, given
    constant term first: (0, 0, 0, 1) is n^3.

    Nonnegative coefficients make P nondecreasing on the naturals, so
    membership is a binary search. Degree <= 2 is allowed but warned about.
    """
    coefficients = tuple(int(c) for c in coefficients)
    if not coefficients:
        raise StructuralError("polynomial needs at least one coefficient")
    if any(c < 0 for c in coefficients):
        raise StructuralError(
            "coefficients must be nonnegative for P to be monotone on N: {}".format(
                list(coefficients)
            )
        )
    while len(coefficients) > 1 and coefficients[-1] == 0:
        coefficients = coefficients[:-1]
    degree = len(coefficients) - 1
    name = "poly:{}".format(",".join(str(c) for c in coefficients))
    if degree <= 2:
        warnings.warn(
            "{} has degree {}, the non-affinity criterion needs degree > 2".format(
                name, degree
            ),
            LowDegreePolynomial,
        )

    if degree == 0:
        constant = coefficients[0]
        return UnaryLanguage(name, lambda t: t == constant, lambda: iter((constant,)))

    def predicate(t):
        if t < coefficients[0]:
            return False
        lo, hi = 0, t
        while lo <= hi:
            mid = (lo + hi) // 2
            value = poly_eval(coefficients, mid)
            if value == t:
                return True
            if value < t:
                lo = mid + 1
            else:
                hi = mid - 1
        return False

    def generator():
        return (poly_eval(coefficients, n) for n in itertools.count())

    return UnaryLanguage(name, predicate, generator)


def _primes():
    p = 2
    while True:
        yield p
        p = int(gmpy2.next_prime(p))


def gen_prime_lang():
    """{a^p : p prime}."""
    return UnaryLanguage("primes", lambda n: n >= 2 and gmpy2.is_prime(n), _primes)


def parse_lang_spec(text):
    """
    ``poly:c0,c1,...`` (constant term first), ``primes``, ``all``, ``empty``
    or ``mod:M,R``.
    """
    kind, _, args = text.strip().partition(":")
    try:
        if kind == "poly" and args:
            return gen_poly_lang(int(c) for c in args.split(","))
        if kind == "mod" and args:
            modulus, remainder = (int(v) for v in args.split(","))
            return residue_class_language(modulus, remainder)
    except ValueError as ve:
        if isinstance(ve, StructuralError):
            raise
        raise StructuralError("cannot parse language {!r}: {}".format(text, ve)) from ve
    if kind == "primes" and not args:
        return gen_prime_lang()
    if kind == "all" and not args:
        return full_language()
    if kind == "empty" and not args:
        return empty_language()
    raise StructuralError(
        "unknown language {!r}; expected poly:SPEC, primes, all, empty or mod:M,R".format(
            text
        )
    )


@attr.s(frozen=True)
class DensityPoint:
    horizon = attr.ib()
    count = attr.ib()
    density = attr.ib()
    running_min = attr.ib()


@attr.s(frozen=True)
class DensityReport:
    """
    Membership ratio up to `horizon` and its trajectory over the horizons
    10, 100, ... and `horizon` itself.
    """

    language = attr.ib()
    horizon = attr.ib()
    count = attr.ib()
    density = attr.ib()
    trajectory = attr.ib(converter=tuple)

    @property
    def running_min(self):
        return self.trajectory[-1].running_min


def horizon_grid(horizon):
    h = 10
    while h < horizon:
        yield h
        h *= 10
    yield horizon


def lower_density(language, horizon):
    """
    |{n <= horizon : a^n in L}| / (horizon + 1), reported with the running
    minimum over the horizon grid as the liminf estimate.
    """
    if horizon < 0:
        raise StructuralError("horizon must be >= 0, got {}".format(horizon))
    members = list(language.members(horizon))
    trajectory = []
    running_min = None
    for h in horizon_grid(horizon):
        count = bisect.bisect_right(members, h)
        density = Fraction(count, h + 1)
        running_min = density if running_min is None else min(running_min, density)
        trajectory.append(DensityPoint(h, count, density, running_min))
        logger.info(
            "%s: density %s at horizon %s", language.name, format_decimal(density, 8), h
        )
    last = trajectory[-1]
    return DensityReport(
        language=language.name,
        horizon=horizon,
        count=last.count,
        density=last.density,
        trajectory=trajectory,
    )


def _interval_validator(instance, attribute, value):
    if not value:
        raise StructuralError("an interval box needs at least one interval")
    for a, b in value:
        if not 0 <= a < b <= 1:
            raise StructuralError(
                "interval [{}, {}) is not a nonempty subinterval of [0, 1]".format(
                    format_rational(a), format_rational(b)
                )
            )


def _to_intervals(value):
    return tuple((parse_rational(a), parse_rational(b)) for a, b in value)


@attr.s(frozen=True)
class IntervalBox:
    """A product of half-open intervals [a_j, b_j) inside [0, 1)^d."""

    intervals = attr.ib(converter=_to_intervals, validator=_interval_validator)

    @classmethod
    def parse(cls, text):
        """``a,b`` or ``a1,b1;a2,b2`` with rational endpoints."""
        try:
            return cls(tuple(tuple(part.split(",")) for part in text.split(";")))
        except ValueError as ve:
            if isinstance(ve, StructuralError):
                raise
            raise StructuralError("cannot parse interval {!r}: {}".format(text, ve)) from ve

    @property
    def dimension(self):
        return len(self.intervals)

    @property
    def volume(self):
        return math.prod((b - a for a, b in self.intervals), start=Fraction(1))

    def contains(self, point):
        return all(
            gmpy2.mpq(a) <= _exact_or_mpfr(frac(x)) < gmpy2.mpq(b)
            for (a, b), x in zip(self.intervals, point)
        )


def _exact_or_mpfr(x):
    if isinstance(x, Fraction):
        return gmpy2.mpq(x)
    return x


def frac(x):
    """x mod 1."""
    if isinstance(x, (Fraction, int)):
        return Fraction(x) - math.floor(x)
    return x - gmpy2.floor(x)


@attr.s(frozen=True)
class SequenceSpec:
    """
    The sequence ((r + mN) alpha) mod 1 for m = 1..count.

    :param alpha: ``num/den``, a decimal string correct to `precision`
        digits, or ``sqrt:K``
    :param precision: decimal digits to which alpha is known
    """

    r = attr.ib(converter=int)
    step = attr.ib(converter=int)
    alpha = attr.ib(converter=str)
    precision = attr.ib(converter=int)
    count = attr.ib(converter=int)

    @step.validator
    def _check_step(self, attribute, value):
        if value < 1:
            raise StructuralError("step N must be >= 1, got {}".format(value))

    @count.validator
    def _check_count(self, attribute, value):
        if value < 1:
            raise StructuralError("count must be >= 1, got {}".format(value))

    @precision.validator
    def _check_precision(self, attribute, value):
        if value < 1:
            raise StructuralError("precision must be >= 1, got {}".format(value))

    @property
    def largest_multiplier(self):
        return self.r + self.count * self.step


def required_digits(largest_multiplier):
    """Digits of alpha needed so terms up to `largest_multiplier` keep GUARD_DIGITS."""
    return math.ceil(math.log10(max(largest_multiplier, 1))) + GUARD_DIGITS


def _rational_alpha(text):
    if RATIONAL_RE.match(text):
        return parse_rational(text)
    return None


def _alpha_mpfr(text, precision):
    """alpha at the current gmpy2 context precision."""
    sqrt = SQRT_RE.match(text)
    if sqrt is not None:
        return gmpy2.sqrt(gmpy2.mpfr(int(sqrt.group(1))))
    decimal = DECIMAL_RE.match(text)
    if decimal is None:
        raise StructuralError(
            "alpha must be num/den, a decimal string or sqrt:K, not {!r}".format(text)
        )
    if len(decimal.group(1)) < precision:
        raise InsufficientPrecision(
            "alpha {!r} has {} digits after the point, {} were promised".format(
                text, len(decimal.group(1)), precision
            )
        )
    return gmpy2.mpfr(text.strip())


def _scaled_fractions(alpha, precision, multipliers, largest):
    """frac(n alpha) for every n in `multipliers`."""
    exact = _rational_alpha(alpha)
    if exact is not None:
        return tuple(frac(n * exact) for n in multipliers)
    needed = required_digits(largest)
    if precision < needed:
        raise InsufficientPrecision(
            "alpha to {} digits loses accuracy past multiplier {}; need {} digits".format(
                precision, largest, needed
            )
        )
    bits = math.ceil((precision + len(str(largest))) * math.log2(10)) + 16
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        a = _alpha_mpfr(alpha, precision)
        values = tuple(frac(n * a) for n in multipliers)
    logger.debug("alpha %s at %s bits for %s terms", alpha, bits, len(values))
    return values


def weyl_sequence(spec: SequenceSpec):
    """
    ((r + mN) alpha) mod 1 for m = 1..count: exact Fractions for rational
    alpha, mpfr otherwise.

    :raise InsufficientPrecision: when alpha's stated digits cannot keep
        GUARD_DIGITS correct digits in the largest term
    """
    multipliers = range(spec.r + spec.step, spec.largest_multiplier + 1, spec.step)
    return _scaled_fractions(
        spec.alpha, spec.precision, multipliers, spec.largest_multiplier
    )


def progression_sequence(language, r, step, alpha, precision, count, scan_limit=None):
    """
    ((r + m_i N) alpha) mod 1 where m_1 < m_2 < ... are the first `count`
    values m >= 0 with a^(r + mN) in `language`.

    :return: tuple of (m_i, value) pairs
    """
    if step < 1 or count < 1:
        raise StructuralError("need step >= 1 and count >= 1")
    if scan_limit is None:
        scan_limit = 1000 * count
    found = []
    for m in range(scan_limit):
        if (r + m * step) in language:
            found.append(m)
            if len(found) == count:
                break
    else:
        raise StructuralError(
            "only {} of {} members of {} found in r + mN for m < {}".format(
                len(found), count, language.name, scan_limit
            )
        )
    multipliers = [r + m * step for m in found]
    values = _scaled_fractions(alpha, precision, multipliers, multipliers[-1])
    return tuple(zip(found, values))


def box_ratio(sequence, box: IntervalBox):
    """
    C(I, n) / n: the share of the first n points whose coordinates, taken
    mod 1, fall in `box`. Scalars count as one-dimensional points.
    """
    if isinstance(sequence, SequenceSpec):
        sequence = weyl_sequence(sequence)
    inside = total = 0
    for point in sequence:
        if not isinstance(point, tuple):
            point = (point,)
        if len(point) != box.dimension:
            raise StructuralError(
                "{}-dimensional point for a {}-dimensional box".format(
                    len(point), box.dimension
                )
            )
        total += 1
        if box.contains(point):
            inside += 1
    if total == 0:
        raise StructuralError("box_ratio needs a nonempty sequence")
    return Fraction(inside, total)


def gap(v, flags):
    """Sum of |v_j| over accepting j minus the sum over rejecting j."""
    return sum(
        (abs(e) if f else -abs(e) for e, f in zip(v, flags)), ZERO
    )


def g_sequence(afa, nmax):
    """
    g(n) for n = 0..nmax by iterating the single transition matrix.

    g(n) > 0 exactly when f_A(a^n) > 1/2.

    :raise NotUnary: when the alphabet has more than one symbol
    """
    if not afa.is_unary:
        raise NotUnary(
            "g(n) needs a unary automaton, alphabet is {}".format(list(afa.alphabet))
        )
    if nmax < 0:
        raise StructuralError("nmax must be >= 0, got {}".format(nmax))
    matrix = afa.matrices[afa.alphabet[0]]
    v = afa.x
    values = [gap(v, afa.F)]
    for _ in range(nmax):
        v = mat_apply(matrix, v)
        values.append(gap(v, afa.F))
    return values


def abs_expansion_residual(A, z):
    """
    | |A + z| - (|A| + Re((|A| / A) z)) |, the error of the first-order
    expansion of |A + z| around A. At most |z|^2 / |A| when |z| <= |A| / 2.
    """
    A, z = complex(A), complex(z)
    if A == 0:
        raise StructuralError("the expansion point A must be nonzero")
    return abs(abs(A + z) - (abs(A) + ((abs(A) / A) * z).real))


def _render(value, places):
    if isinstance(value, Fraction):
        return format_decimal(value, places), format_rational(value)
    return format(value, ".{}f".format(places)), ""


def write_density_csv(report: DensityReport, out, places=12):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("horizon", "count", "density", "density_exact", "running_min"))
    for point in report.trajectory:
        writer.writerow(
            (
                point.horizon,
                point.count,
                format_decimal(point.density, places),
                format_rational(point.density),
                format_decimal(point.running_min, places),
            )
        )


def write_weyl_csv(terms, out, places=20):
    """One row per (m, fractional part) pair."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("m", "fractional_part", "exact"))
    for m, value in terms:
        writer.writerow((m, *_render(value, places)))


def write_gseq_csv(values, out, places=12):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("n", "g", "g_exact", "accepted"))
    for n, g in enumerate(values):
        writer.writerow(
            (n, format_decimal(g, places), format_rational(g), str(g > 0).lower())
        )
