"""
afasim.selftest - exhaustive small-modulus checks and oracle sweeps

Each suite compares a residue-form computation against exact integer or
rational arithmetic and records every disagreement.
"""
import logging
import random

import attr

from afasim import automata, logspace
from afasim.residue import (
    Order,
    PrimeBasis,
    crt_reconstruct,
    reduce,
    residue_compare,
    residue_mod,
)
from afasim.randomized import BINARY, all_words, random_afa, random_pfa

logger = logging.getLogger(__name__)

SUITES = (
    "parity_criterion",
    "residue_compare",
    "crt_roundtrip",
    "residue_mod",
    "pfa_oracle",
    "afa_oracle",
    "embedding_identities",
)
MAX_REPORTED_FAILURES = 10


@attr.s
class SuiteResult:
    name = attr.ib()
    checked = attr.ib(default=0)
    failures = attr.ib(factory=list)

    @property
    def passed(self):
        return not self.failures

    def check(self, ok, describe):
        self.checked += 1
        if not ok and len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(describe())
        elif not ok:
            self.failures.append(None)

    def __str__(self):
        return "{}: {} checked, {} failed".format(
            self.name, self.checked, len(self.failures)
        )


def _positive(instance, attribute, value):
    if value < 1:
        raise ValueError("{} must be >= 1, got {}".format(attribute.name, value))


@attr.s(frozen=True)
class SelfTestRecipe:
    """
    Sizes and seed of one self-test run. The defaults are a quick profile;
    acceptance() gives the full sweep.
    """

    seed = attr.ib(default=0)
    machines = attr.ib(default=12, validator=_positive)
    max_len = attr.ib(default=5, validator=_positive)
    max_states = attr.ib(default=5, validator=_positive)
    max_den = attr.ib(default=10, validator=_positive)
    embedding_machines = attr.ib(default=12, validator=_positive)
    embedding_max_len = attr.ib(default=5, validator=_positive)
    small_basis = attr.ib(
        default=PrimeBasis((3, 5, 7)), validator=attr.validators.instance_of(PrimeBasis)
    )
    crt_basis = attr.ib(
        default=PrimeBasis((3, 5, 7, 11)),
        validator=attr.validators.instance_of(PrimeBasis),
    )
    moduli = attr.ib(default=(2, 3, 4, 10), converter=tuple)

    @classmethod
    def acceptance(cls, **kwargs):
        sizes = dict(machines=100, max_len=8, embedding_machines=20, embedding_max_len=5)
        sizes.update(kwargs)
        return cls(**sizes)

    def rng(self, suite):
        return random.Random("{}:{}".format(self.seed, suite))

    def parity_criterion(self):
        """x >= y exactly when (x - y) mod N and x - y have equal parity."""
        result = SuiteResult("parity_criterion")
        N = self.small_basis.product
        for x in range(N):
            for y in range(N):
                z = (x - y) % N
                result.check(
                    (x >= y) == ((x % 2 - y % 2) % 2 == z % 2),
                    lambda: "x={} y={} z={}".format(x, y, z),
                )
        return result

    def residue_compare(self):
        result = SuiteResult("residue_compare")
        basis = self.small_basis
        residues = [reduce(x, basis) for x in range(basis.product)]
        for x, xres in enumerate(residues):
            for y, yres in enumerate(residues):
                expect = Order.EQ if x == y else Order.GT if x > y else Order.LT
                got = residue_compare(xres, yres)
                result.check(
                    got is expect,
                    lambda: "x={} y={}: got {} expected {}".format(x, y, got, expect),
                )
        return result

    def crt_roundtrip(self):
        result = SuiteResult("crt_roundtrip")
        for x in range(self.crt_basis.product):
            got = crt_reconstruct(reduce(x, self.crt_basis))
            result.check(got == x, lambda: "x={} reconstructed as {}".format(x, got))
        return result

    def residue_mod(self):
        result = SuiteResult("residue_mod")
        for x in range(self.crt_basis.product):
            res = reduce(x, self.crt_basis)
            for M in self.moduli:
                got = residue_mod(res, M)
                result.check(
                    got == x % M,
                    lambda: "x={} M={}: got {} expected {}".format(x, M, got, x % M),
                )
        return result

    def _machines(self, suite, factory, count):
        rng = self.rng(suite)
        for _ in range(count):
            yield factory(rng, rng.randint(1, self.max_states), BINARY, self.max_den)

    def pfa_oracle(self):
        result = SuiteResult("pfa_oracle")
        for i, pfa in enumerate(self._machines("pfa_oracle", random_pfa, self.machines)):
            ipfa = logspace.clear_denominators(pfa)
            for word in all_words(pfa.alphabet, self.max_len):
                f = automata.pfa_value(pfa, word)
                eq = logspace.decide_eq_cutpoint_rns(ipfa, word)
                gt = logspace.decide_gt_cutpoint_rns(ipfa, word)
                result.check(
                    eq == (f * 2 == 1) and gt == (f * 2 > 1),
                    lambda: "machine {} word {}: f={} eq={} gt={}".format(
                        i, "".join(word), f, eq, gt
                    ),
                )
        return result

    def afa_oracle(self):
        result = SuiteResult("afa_oracle")
        for i, afa in enumerate(self._machines("afa_oracle", random_afa, self.machines)):
            emb = logspace.turakainen_embed(afa)
            for word in all_words(afa.alphabet, self.max_len):
                f = automata.afa_value(afa, word)
                order = logspace.compare_affine(emb, word).result
                gt, ge = order is Order.GT, order is not Order.LT
                result.check(
                    gt == (f * 2 > 1) and ge == (f * 2 >= 1),
                    lambda: "machine {} word {}: f={} gt={} ge={}".format(
                        i, "".join(word), f, gt, ge
                    ),
                )
        return result

    def embedding_identities(self):
        result = SuiteResult("embedding_identities")
        machines = self._machines(
            "embedding_identities", random_afa, self.embedding_machines
        )
        for i, afa in enumerate(machines):
            emb = logspace.turakainen_embed(afa)
            for word in all_words(afa.alphabet, self.embedding_max_len):
                checks = logspace.embedding_identities(afa, emb, word)
                failed = [name for name, ok in checks.items() if not ok]
                result.check(
                    not failed,
                    lambda: "machine {} word {}: {}".format(i, "".join(word), failed),
                )
        return result

    def run(self, suites=SUITES):
        results = []
        for name in suites:
            if name not in SUITES:
                raise ValueError("unknown suite {!r}".format(name))
            result = getattr(self, name)()
            level = logging.INFO if result.passed else logging.ERROR
            logger.log(level, "%s", result)
            for failure in result.failures:
                if failure is not None:
                    logger.debug("%s failure: %s", name, failure)
            results.append(result)
        return results
