"""
afasim.logspace - cutpoint decisions from residues only

PFA decisions clear denominators and compare 2 * y^T M'_w x with D^n one prime
at a time. AfA decisions first embed the automaton into nonnegative integer
matrices (border rows and columns with zero sums, shifted by the all-ones
matrix E and scaled to integers), so that every quantity held in residue
form is a nonnegative integer and absolute values reduce to comparisons.

Each prime gets its own pass over the input word; nothing is ever multiplied
out over the integers. Cutpoints other than 1/2 are only supported by the
exact routines in afasim.automata.
"""
from fractions import Fraction
import itertools
import logging
import math

import attr

from afasim.automata import ZERO, chain_apply, chain_matrix, l1, mat_mul
from afasim.exceptions import UnknownSymbol
from afasim.model import AfA, CutpointKind, PFA
from afasim.residue import (
    Order,
    Residues,
    basis_for_bound,
    iter_odd_primes,
    mod_mat_apply,
    residue_abs_diff,
    residue_add,
    residue_compare,
    residue_scale,
)
from afasim.space import SpaceMeter, SpaceTrace, observe
from afasim.util import denominators, lcm_of

logger = logging.getLogger(__name__)


@attr.s(frozen=True)
class IntegerPFA:
    """
    A PFA with denominators cleared: M'_a = D * M_a and xint = xscale * x.

    :param D: lcm of all matrix entry denominators
    :param matrices: symbol -> k x k integer matrix with entries in [0, D]
    :param xscale: lcm of the initial vector's denominators
    :param xint: the integer initial vector
    :param y: 0/1 final vector
    """

    alphabet = attr.ib(converter=tuple)
    D = attr.ib()
    matrices = attr.ib(hash=False)
    xscale = attr.ib()
    xint = attr.ib(converter=tuple)
    y = attr.ib(converter=tuple)

    @property
    def k(self):
        return len(self.xint)


def clear_denominators(pfa: PFA):
    D = lcm_of(
        d for m in pfa.matrices.values() for row in m for d in denominators(row)
    )
    xscale = lcm_of(denominators(pfa.x))
    return IntegerPFA(
        alphabet=pfa.alphabet,
        D=D,
        matrices={
            sym: tuple(tuple(int(D * e) for e in row) for row in m)
            for sym, m in pfa.matrices.items()
        },
        xscale=xscale,
        xint=(int(xscale * e) for e in pfa.x),
        y=pfa.y,
    )


@attr.s(frozen=True)
class EmbeddedAfA:
    """
    An AfA rewritten over (k+2) states with nonnegative integer matrices.

    :param B: symbol -> rational matrix, M_a bordered so that every row and
        column sums to 0
    :param m: smallest nonnegative integer with B_a + m E >= 0 for every a
    :param g: smallest positive integer making every g (B_a + m E) integral
    :param Dint: symbol -> g (B_a + m E)
    :param xscale: lcm of the initial vector's denominators
    :param xprime: xscale * (0, x, 0), an integer vector
    :param Fprime: (0, F, 0)
    """

    k = attr.ib()
    alphabet = attr.ib(converter=tuple)
    B = attr.ib(hash=False)
    m = attr.ib()
    g = attr.ib()
    Dint = attr.ib(hash=False)
    xscale = attr.ib()
    xprime = attr.ib(converter=tuple)
    Fprime = attr.ib(converter=tuple)

    @property
    def size(self):
        return self.k + 2

    @property
    def interior(self):
        return range(1, self.k + 1)

    @property
    def xshift(self):
        return max(0, -min(self.xprime))

    @property
    def xplus(self):
        """xprime shifted by a multiple of the all-ones vector to be nonnegative."""
        return tuple(e + self.xshift for e in self.xprime)

    @property
    def beta(self):
        return max(abs(e) for b in self.B.values() for row in b for e in row)

    def C(self, symbol):
        return tuple(tuple(e + self.m for e in row) for row in self.B[symbol])

    @property
    def E(self):
        return tuple(tuple(Fraction(1) for _ in range(self.size)) for _ in range(self.size))


def border_matrix(matrix):
    """
    Embed a k x k matrix as the centre of a (k+2) x (k+2) matrix whose rows
    and columns all sum to 0. The first row and last column are zero.
    """
    k = len(matrix)
    c = tuple(-sum(row, ZERO) for row in matrix)
    d = tuple(-sum(col, ZERO) for col in zip(*matrix))
    e = -sum(c, ZERO)
    zero = Fraction(0)
    rows = [tuple(zero for _ in range(k + 2))]
    for ci, row in zip(c, matrix):
        rows.append((ci, *row, zero))
    rows.append((e, *d, zero))
    return tuple(rows)


def turakainen_embed(afa: AfA):
    B = {sym: border_matrix(afa.matrices[sym]) for sym in afa.alphabet}
    lowest = min(e for b in B.values() for row in b for e in row)
    m = max(0, math.ceil(-lowest))
    g = lcm_of(
        (e + m).denominator for b in B.values() for row in b for e in row
    )
    Dint = {
        sym: tuple(tuple(int(g * (e + m)) for e in row) for row in b)
        for sym, b in B.items()
    }
    xscale = lcm_of(denominators(afa.x))
    embedded = EmbeddedAfA(
        k=afa.k,
        alphabet=afa.alphabet,
        B=B,
        m=m,
        g=g,
        Dint=Dint,
        xscale=xscale,
        xprime=(0, *(int(xscale * e) for e in afa.x), 0),
        Fprime=(0, *afa.F, 0),
    )
    logger.debug(
        "Embed %s-state AfA: m=%s g=%s xscale=%s", afa.k, m, g, xscale
    )
    return embedded


def value_bound(machine, n):
    """
    Upper bound V(n) on every integer compared while deciding a word of
    length n; the basis is then basis_for_bound(V(n)).
    """
    if n < 0:
        raise ValueError("length must be nonnegative")
    if isinstance(machine, IntegerPFA):
        return 2 * machine.xscale * machine.D ** n
    if isinstance(machine, EmbeddedAfA):
        size = machine.size
        growth = machine.g * (machine.m * size + machine.beta)
        # 2 |F'(D_w x~ - b)| <= 4 g^(n+1) (m(k+2))^n sum(x+)
        return math.ceil(
            4 * size * max(machine.xplus) * growth ** n * machine.g
        )
    raise TypeError("no value bound for {!r}".format(machine))


@attr.s(frozen=True)
class RnsDecision:
    """Outcome of one residue decision with its register trace."""

    result = attr.ib()
    basis = attr.ib()
    trace = attr.ib()

    def __bool__(self):
        return bool(self.result)


def space_trace(decision):
    """
    The SpaceTrace of a decision run.

    :raise SpaceBoundExceeded: when a register exceeded the width contract
    """
    return decision.trace.check()


def _run_primes(basis):
    return itertools.islice(iter_odd_primes(), basis.r)


def _as_integer_pfa(machine):
    return machine if isinstance(machine, IntegerPFA) else clear_denominators(machine)


def _as_embedded(machine):
    return machine if isinstance(machine, EmbeddedAfA) else turakainen_embed(machine)


def _check_word(machine, word):
    word = tuple(word)
    if isinstance(machine, (PFA, AfA)):
        machine.check_word(word)
        return word
    for sym in word:
        if sym not in machine.alphabet:
            raise UnknownSymbol(
                "symbol {!r} is not in the alphabet {}".format(
                    sym, list(machine.alphabet)
                )
            )
    return word


def _basis(machine, n):
    basis = basis_for_bound(value_bound(machine, n))
    logger.info("n=%s: %s primes, largest %s", n, basis.r, basis.largest)
    return basis


def _pfa_pass(ipfa, word, p, meter):
    """(2 y^T M'_w xint mod p, xscale D^n mod p) in one pass over the word."""
    meter.begin_pass()
    reduced = {
        sym: tuple(tuple(a % p for a in row) for row in m)
        for sym, m in ipfa.matrices.items()
    }
    D = ipfa.D % p
    v = tuple(observe(meter, e % p) for e in ipfa.xint)
    dpow = ipfa.xscale % p
    for sym in word:
        v = mod_mat_apply(reduced[sym], v, p, meter)
        dpow = observe(meter, dpow * D) % p
    accepted = 0
    for e, flag in zip(v, ipfa.y):
        if flag:
            accepted = observe(meter, accepted + e) % p
    return observe(meter, 2 * accepted) % p, dpow


def _finish(result, basis, meter, n):
    trace = SpaceTrace.from_meter(meter, n=n, basis=basis)
    logger.debug("rns decision %s: %s", result, trace.describe())
    return RnsDecision(result=result, basis=basis, trace=trace)


def pfa_residues(ipfa, word, basis, meter=None):
    """Residues of 2 y^T M'_w xint and of xscale D^n over `basis`."""
    meter = meter if meter is not None else SpaceMeter()
    lhs_digits, rhs_digits = [], []
    for p in _run_primes(basis):
        lhs, rhs = _pfa_pass(ipfa, word, p, meter)
        lhs_digits.append(lhs)
        rhs_digits.append(rhs)
    return Residues(basis, lhs_digits), Residues(basis, rhs_digits)


def run_eq_cutpoint(machine, word):
    """Decide f_P(w) = 1/2 prime by prime, stopping at the first mismatch."""
    word = _check_word(machine, word)
    ipfa = _as_integer_pfa(machine)
    basis = _basis(ipfa, len(word))
    meter = SpaceMeter()
    result = True
    for p in _run_primes(basis):
        lhs, rhs = _pfa_pass(ipfa, word, p, meter)
        if lhs != rhs:
            result = False
            break
    return _finish(result, basis, meter, len(word))


def run_gt_cutpoint(machine, word):
    """Decide f_P(w) > 1/2 by comparing residues of 2 y^T M'_w xint and xscale D^n."""
    word = _check_word(machine, word)
    ipfa = _as_integer_pfa(machine)
    basis = _basis(ipfa, len(word))
    meter = SpaceMeter()
    lhs, rhs = pfa_residues(ipfa, word, basis, meter)
    order = residue_compare(lhs, rhs, meter)
    return _finish(order is Order.GT, basis, meter, len(word))


def decide_eq_cutpoint_rns(machine, word):
    return run_eq_cutpoint(machine, word).result


def decide_exclusive_cutpoint_rns(machine, word):
    """Membership with exclusive cutpoint 1/2: f_P(w) != 1/2."""
    return not run_eq_cutpoint(machine, word).result


def decide_gt_cutpoint_rns(machine, word):
    return run_gt_cutpoint(machine, word).result


def correction_term(emb, n):
    """b = m^n (k+2)^(n-1) g^(n+1) sum(x+), exactly, for n >= 1."""
    return emb.m ** n * emb.size ** (n - 1) * emb.g ** (n + 1) * sum(emb.xplus)


def _affine_pass(emb, word, p, meter):
    """
    Residues mod p of D_w (g x+) on the interior coordinates and of the
    correction term m^n (k+2)^(n-1) g^(n+1) sum(x+), for n >= 1.
    """
    meter.begin_pass()
    reduced = {
        sym: tuple(tuple(a % p for a in row) for row in m)
        for sym, m in emb.Dint.items()
    }
    g = emb.g % p
    v = tuple(observe(meter, g * (e % p)) % p for e in emb.xplus)
    correction = observe(meter, g * (sum(emb.xplus) % p)) % p
    first = emb.m * emb.g % p
    later = emb.m * emb.g * emb.size % p
    for i, sym in enumerate(word):
        v = mod_mat_apply(reduced[sym], v, p, meter)
        correction = observe(meter, correction * (later if i else first)) % p
    return tuple(v[j] for j in emb.interior), correction


def _empty_word_sides(emb, basis):
    """Both sides for the empty word, from the machine constants |x'_j|."""
    accepted = sum(abs(emb.xprime[j]) for j in emb.interior if emb.Fprime[j])
    total = sum(abs(emb.xprime[j]) for j in emb.interior)
    lhs = Residues(basis, ((2 * accepted) % p for p in basis.primes))
    rhs = Residues(basis, (total % p for p in basis.primes))
    return lhs, rhs


def affine_residues(emb, word, basis, meter=None):
    """
    Residues of D_w (g x+) on each interior coordinate and of the correction
    term b, one pass over `word` per prime of `basis`. Needs |w| >= 1.

    :return: (tuple of per-coordinate Residues, Residues of b)
    """
    meter = meter if meter is not None else SpaceMeter()
    columns = [[] for _ in emb.interior]
    b_digits = []
    for p in _run_primes(basis):
        interior, correction = _affine_pass(emb, word, p, meter)
        for digits, d in zip(columns, interior):
            digits.append(d)
        b_digits.append(correction)
    return tuple(Residues(basis, d) for d in columns), Residues(basis, b_digits)


def compare_affine(machine, word):
    """
    Compare 2 |F'(D_w x~ - b)| with |G'(D_w x~ - b)| in residue form, where
    x~ = g x+, b is the correction vector and G' keeps the k interior
    coordinates (the border coordinates carry the -1 that makes B's columns
    sum to 0 and are not part of |M_w x|).

    :return: RnsDecision whose result is the Order of f_A(w) against 1/2
    """
    word = _check_word(machine, word)
    emb = _as_embedded(machine)
    n = len(word)
    basis = _basis(emb, n)
    meter = SpaceMeter()
    if n == 0:
        meter.begin_pass()
        lhs, rhs = _empty_word_sides(emb, basis)
    else:
        columns, b = affine_residues(emb, word, basis, meter)
        zero = Residues(basis, (0 for _ in basis.primes))
        lhs, rhs = zero, zero
        for j, column in zip(emb.interior, columns):
            diff = residue_abs_diff(column, b, meter)
            rhs = residue_add(rhs, diff)
            if emb.Fprime[j]:
                lhs = residue_add(lhs, diff)
        lhs = residue_scale(lhs, 2)
    return _finish(residue_compare(lhs, rhs, meter), basis, meter, n)


def run_affine_cutpoint(machine, word, strict=True):
    """Decide f_A(w) > 1/2, or f_A(w) >= 1/2 with strict=False."""
    decision = compare_affine(machine, word)
    order = decision.result
    result = order is Order.GT if strict else order is not Order.LT
    return attr.evolve(decision, result=result)


def decide_affine_cutpoint_rns(machine, word):
    """f_A(w) > 1/2, the strict cutpoint membership."""
    return run_affine_cutpoint(machine, word, strict=True).result


def decide_affine_at_least_rns(machine, word):
    """f_A(w) >= 1/2, the predicate of the embedded inequality."""
    return run_affine_cutpoint(machine, word, strict=False).result


def run_rns(machine, word, kind=CutpointKind.STRICT):
    """Cutpoint 1/2 membership of either automaton type in residue form."""
    kind = CutpointKind.from_any(kind)
    if isinstance(machine, (PFA, IntegerPFA)):
        if kind is CutpointKind.STRICT:
            return run_gt_cutpoint(machine, word)
        equal = run_eq_cutpoint(machine, word)
        return attr.evolve(equal, result=not equal.result)
    decision = compare_affine(machine, word)
    if kind is CutpointKind.STRICT:
        return attr.evolve(decision, result=decision.result is Order.GT)
    return attr.evolve(decision, result=decision.result is not Order.EQ)


def _matrix_power(matrix, n):
    product = matrix
    for _ in range(n - 1):
        product = mat_mul(matrix, product)
    return product


def embedding_identities(afa: AfA, emb: EmbeddedAfA, word):
    """
    Check the identities the embedded decision rests on for one word.

    :return: mapping of identity name -> whether it held exactly
    """
    word = _check_word(afa, word)
    n = len(word)
    size = emb.size
    zero = tuple(tuple(ZERO for _ in range(size)) for _ in range(size))
    v = chain_apply(afa.matrices, afa.x, word)
    bx = chain_apply(emb.B, (ZERO, *afa.x, ZERO), word)
    checks = {
        "interior norm": l1(bx[j] for j in emb.interior) == l1(v),
        "accepting norm": l1(e for e, f in zip(bx, emb.Fprime) if f)
        == l1(e for e, f in zip(v, afa.F) if f),
        "integer matrices": all(
            emb.Dint[sym] == tuple(tuple(emb.g * e for e in row) for row in emb.C(sym))
            for sym in emb.alphabet
        ),
    }
    E = emb.E
    checks["B E = E B = 0"] = all(
        mat_mul(emb.B[sym], E) == zero and mat_mul(E, emb.B[sym]) == zero
        for sym in set(word)
    )
    if n >= 1:
        scale = size ** (n - 1)
        checks["E power"] = _matrix_power(E, n) == tuple(
            tuple(scale * e for e in row) for row in E
        )
        shift = emb.m ** n * scale
        B_w = chain_matrix(emb.B, word, size)
        C_w = chain_matrix({sym: emb.C(sym) for sym in emb.alphabet}, word, size)
        checks["C_w shift"] = C_w == tuple(
            tuple(b + shift for b in row) for row in B_w
        )
        checks["border sums"] = l1(bx) == l1(v) + 1
        a = chain_apply(emb.Dint, tuple(emb.g * e for e in emb.xplus), word)
        b = correction_term(emb, n)
        diffs = [abs(a[j] - b) for j in emb.interior]
        accepted = sum(d for j, d in zip(emb.interior, diffs) if emb.Fprime[j])
        checks["ratio"] = Fraction(accepted, sum(diffs)) == l1(
            e for e, f in zip(v, afa.F) if f
        ) / l1(v)
    return checks
