"""
afasim.space - register-width instrumentation for residue computations

A RAM simulation cannot show logarithmic space directly, so instrumented
routines report every working register they hold to a SpaceMeter. The input
word and the output bit are not registers.
"""
import logging

import attr

from afasim.exceptions import SpaceBoundExceeded
from afasim.util import ceil_log2

logger = logging.getLogger(__name__)

REGISTER_SLACK_BITS = 4


def register_bound(largest_prime, modulus=2):
    """2 * ceil(log2 max(p_r, M)) + 4 bits."""
    return 2 * ceil_log2(max(largest_prime, modulus)) + REGISTER_SLACK_BITS


@attr.s
class SpaceMeter:
    """Per-run record of the widest register and the number of prime passes."""

    max_bits = attr.ib(default=0)
    passes = attr.ib(default=0)
    observations = attr.ib(default=0, repr=False)

    def observe(self, value):
        bits = value.bit_length()
        self.observations += 1
        if bits > self.max_bits:
            self.max_bits = bits
        return value

    def begin_pass(self):
        self.passes += 1


def observe(meter, value):
    """Record `value` if a meter is attached; always return the value."""
    if meter is not None:
        meter.observe(value)
    return value


@attr.s(frozen=True)
class SpaceTrace:
    """
    Register usage of one residue decision.

    :param n: input length
    :param r: number of primes in the basis
    :param largest_prime: p_r
    :param max_register_bits: widest working register observed
    :param passes: per-prime passes over the input word
    """

    n = attr.ib()
    r = attr.ib()
    largest_prime = attr.ib()
    max_register_bits = attr.ib()
    passes = attr.ib()

    @property
    def bound_bits(self):
        return register_bound(self.largest_prime)

    @property
    def within_bound(self):
        return self.max_register_bits <= self.bound_bits

    def check(self):
        """
        :raise SpaceBoundExceeded: when a register exceeded the width contract
        """
        if not self.within_bound:
            raise SpaceBoundExceeded(
                "register of {} bits exceeds bound {} (n={}, r={}, p_r={})".format(
                    self.max_register_bits,
                    self.bound_bits,
                    self.n,
                    self.r,
                    self.largest_prime,
                )
            )
        return self

    @classmethod
    def from_meter(cls, meter, n, basis):
        return cls(
            n=n,
            r=basis.r,
            largest_prime=basis.largest,
            max_register_bits=meter.max_bits,
            passes=meter.passes,
        )

    def describe(self):
        return (
            "n={} r={} p_r={} max_register_bits={} bound={} passes={}".format(
                self.n,
                self.r,
                self.largest_prime,
                self.max_register_bits,
                self.bound_bits,
                self.passes,
            )
        )
