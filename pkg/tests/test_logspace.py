from fractions import Fraction
import logging
import random

import pytest

from afasim import automata, logspace
from afasim.exceptions import SpaceBoundExceeded, UnknownSymbol
from afasim.model import AfA
from afasim.randomized import all_words, random_afa, random_pfa
from afasim.residue import Order, basis_for_bound, crt_reconstruct
from afasim.selftest import SelfTestRecipe
from afasim.space import SpaceTrace

F = Fraction


@pytest.fixture
def half_afa():
    """f(w) = 1/2 for every word, with a non-integral initial vector."""
    return AfA(
        alphabet="a",
        x=("1/2", "1/2"),
        matrices={"a": (("1", "0"), ("0", "1"))},
        flags=(1, 0),
    )


@pytest.fixture
def one_state_afa():
    return AfA(alphabet="a", x=("1",), matrices={"a": (("1",),)}, flags=(1,))


def test_clear_denominators(halving_pfa, three_state_pfa):
    ipfa = logspace.clear_denominators(halving_pfa)
    assert ipfa.D == 2
    assert ipfa.matrices["a"] == ((1, 0), (1, 2))
    assert ipfa.xscale == 1
    assert ipfa.xint == (1, 0)
    assert logspace.value_bound(ipfa, 3) == 16

    ipfa = logspace.clear_denominators(three_state_pfa)
    assert ipfa.D == 6
    assert ipfa.xscale == 6
    assert ipfa.xint == (3, 2, 1)
    assert logspace.value_bound(ipfa, 2) == 2 * 6 * 36


def test_embed_one_state(one_state_afa):
    emb = logspace.turakainen_embed(one_state_afa)
    assert emb.B["a"] == ((0, 0, 0), (-1, 1, 0), (1, -1, 0))
    assert emb.m == 1
    assert emb.g == 1
    assert emb.C("a") == ((1, 1, 1), (0, 2, 1), (2, 0, 1))
    assert emb.Dint["a"] == ((1, 1, 1), (0, 2, 1), (2, 0, 1))
    assert emb.xprime == (0, 1, 0)
    assert emb.Fprime == (0, 1, 0)
    assert logspace.value_bound(emb, 0) == 4 * 3 * 1 * 1
    assert logspace.value_bound(emb, 1) == 4 * 3 * 1 * 4 * 1


def test_embed_scales_to_integers(two_thirds_afa, half_afa):
    emb = logspace.turakainen_embed(two_thirds_afa)
    assert emb.xprime == (0, 2, -1, 0)
    assert emb.xshift == 1
    assert emb.xplus == (1, 3, 0, 1)
    emb = logspace.turakainen_embed(half_afa)
    assert emb.xscale == 2
    assert emb.xprime == (0, 1, 1, 0)
    for d in emb.Dint.values():
        assert all(isinstance(e, int) and e >= 0 for row in d for e in row)


def test_border_rows_and_columns_sum_to_zero(rng):
    afa = random_afa(rng, 4)
    for b in logspace.turakainen_embed(afa).B.values():
        assert all(sum(row) == 0 for row in b)
        assert all(sum(col) == 0 for col in zip(*b))
        assert all(e == 0 for e in b[0])
        assert all(row[-1] == 0 for row in b)


@pytest.mark.parametrize(
    "word, eq, gt",
    [("", False, False), ("a", True, False), ("aa", False, True), ("aaaa", False, True)],
)
def test_pfa_decisions(halving_pfa, word, eq, gt):
    assert logspace.decide_eq_cutpoint_rns(halving_pfa, word) is eq
    assert logspace.decide_gt_cutpoint_rns(halving_pfa, word) is gt
    assert logspace.decide_exclusive_cutpoint_rns(halving_pfa, word) is not eq


def test_pfa_constant_half(half_pfa):
    for word in all_words(half_pfa.alphabet, 4):
        assert logspace.decide_eq_cutpoint_rns(half_pfa, word)
        assert not logspace.decide_gt_cutpoint_rns(half_pfa, word)


def test_unknown_symbol(halving_pfa, two_thirds_afa):
    with pytest.raises(UnknownSymbol):
        logspace.decide_gt_cutpoint_rns(halving_pfa, "ab")
    with pytest.raises(UnknownSymbol):
        logspace.decide_affine_cutpoint_rns(two_thirds_afa, "abc")


def test_affine_decisions(two_thirds_afa, unary_afa, half_afa):
    for word in all_words(two_thirds_afa.alphabet, 4):
        assert logspace.decide_affine_cutpoint_rns(two_thirds_afa, word)
    for n in range(8):
        assert logspace.decide_affine_cutpoint_rns(unary_afa, "a" * n)
    for n in range(4):
        assert not logspace.decide_affine_cutpoint_rns(half_afa, "a" * n)
        assert logspace.decide_affine_at_least_rns(half_afa, "a" * n)
        assert not logspace.run_rns(half_afa, "a" * n, kind="exclusive").result


def test_affine_rejects(two_thirds_afa):
    flipped = AfA(
        alphabet=two_thirds_afa.alphabet,
        x=two_thirds_afa.x,
        matrices=two_thirds_afa.matrices,
        flags=(0, 1),
    )
    for word in ("", "a", "ab"):
        assert not logspace.decide_affine_cutpoint_rns(flipped, word)
        assert not logspace.decide_affine_at_least_rns(flipped, word)


def test_pfa_oracle_sweep(rng):
    for _ in range(12):
        pfa = random_pfa(rng, rng.randint(1, 5))
        for word in all_words(pfa.alphabet, 5):
            f = automata.pfa_value(pfa, word)
            assert logspace.decide_eq_cutpoint_rns(pfa, word) == (f == F(1, 2))
            assert logspace.decide_gt_cutpoint_rns(pfa, word) == (f > F(1, 2))


def test_afa_oracle_sweep(rng):
    for _ in range(12):
        afa = random_afa(rng, rng.randint(1, 5))
        emb = logspace.turakainen_embed(afa)
        for word in all_words(afa.alphabet, 5):
            f = automata.afa_value(afa, word)
            assert logspace.decide_affine_cutpoint_rns(emb, word) == (f > F(1, 2))


def test_embedding_identities():
    rng = random.Random(20)
    for _ in range(20):
        afa = random_afa(rng, rng.randint(1, 4))
        emb = logspace.turakainen_embed(afa)
        for word in all_words(afa.alphabet, 5):
            checks = logspace.embedding_identities(afa, emb, word)
            assert all(checks.values()), (afa, word, checks)


@pytest.mark.slow
@pytest.mark.parametrize(
    "suite", ["pfa_oracle", "afa_oracle", "embedding_identities"]
)
def test_acceptance_sweeps(suite):
    (result,) = SelfTestRecipe.acceptance().run([suite])
    assert result.passed, result.failures


def _space_word(n):
    return ("a", "b", "b") * (n // 3) + ("a",) * (n % 3)


def _check_space(three_state_pfa, n):
    decision = logspace.run_gt_cutpoint(three_state_pfa, _space_word(n))
    trace = logspace.space_trace(decision)
    assert trace.n == n
    assert trace.passes == trace.r
    assert trace.max_register_bits <= trace.bound_bits
    assert trace.r / n <= 1
    return trace


@pytest.mark.parametrize("n", [10, 100, 1000])
def test_space_scaling(three_state_pfa, n):
    _check_space(three_state_pfa, n)


@pytest.mark.slow
def test_space_scaling_ten_thousand(three_state_pfa):
    _check_space(three_state_pfa, 10000)


def test_affine_space_trace(unary_afa):
    for n in (0, 1, 10, 40):
        trace = logspace.space_trace(
            logspace.run_affine_cutpoint(unary_afa, "a" * n)
        )
        assert trace.within_bound


def test_space_bound_exceeded():
    trace = SpaceTrace(n=1, r=1, largest_prime=3, max_register_bits=99, passes=1)
    with pytest.raises(SpaceBoundExceeded):
        trace.check()
    assert "max_register_bits=99" in trace.describe()


def test_eq_stops_at_first_mismatch(halving_pfa):
    decision = logspace.run_eq_cutpoint(halving_pfa, "")
    assert decision.result is False
    assert decision.trace.passes == 1


def test_pfa_compared_integers_within_bound(rng):
    for _ in range(20):
        pfa = random_pfa(rng, rng.randint(1, 4))
        ipfa = logspace.clear_denominators(pfa)
        for word in all_words(pfa.alphabet, 4):
            bound = logspace.value_bound(ipfa, len(word))
            basis = basis_for_bound(bound)
            lhs_res, rhs_res = logspace.pfa_residues(ipfa, word, basis)
            v = automata.chain_apply(ipfa.matrices, ipfa.xint, word)
            lhs = 2 * sum(e for e, flag in zip(v, ipfa.y) if flag)
            rhs = ipfa.xscale * ipfa.D ** len(word)
            assert crt_reconstruct(lhs_res) == lhs
            assert crt_reconstruct(rhs_res) == rhs
            assert 0 <= lhs <= bound and 0 < rhs <= bound
            assert F(lhs, 2 * rhs) == automata.pfa_value(pfa, word)


def test_affine_compared_integers_within_bound():
    rng = random.Random(30)
    for _ in range(30):
        afa = random_afa(rng, rng.randint(1, 4))
        emb = logspace.turakainen_embed(afa)
        start = tuple(emb.g * e for e in emb.xplus)
        for word in all_words(afa.alphabet, 4):
            n = len(word)
            if n == 0:
                continue
            bound = logspace.value_bound(emb, n)
            basis = basis_for_bound(bound)
            columns, b_res = logspace.affine_residues(emb, word, basis)
            a = automata.chain_apply(emb.Dint, start, word)
            b = logspace.correction_term(emb, n)
            assert crt_reconstruct(b_res) == b
            assert 0 <= b <= bound
            diffs = {}
            for j, column in zip(emb.interior, columns):
                assert crt_reconstruct(column) == a[j]
                assert 0 <= a[j] <= bound
                diffs[j] = abs(a[j] - b)
            lhs = 2 * sum(d for j, d in diffs.items() if emb.Fprime[j])
            rhs = sum(diffs.values())
            assert 0 <= lhs <= bound
            assert 0 < rhs <= bound
            assert F(lhs, 2 * rhs) == automata.afa_value(afa, word)


def test_embedding_ratio_matches_value(two_thirds_afa, unary_afa):
    for afa in (two_thirds_afa, unary_afa):
        emb = logspace.turakainen_embed(afa)
        for word in all_words(afa.alphabet, 3):
            checks = logspace.embedding_identities(afa, emb, word)
            if word:
                assert checks["ratio"]


def test_space_trace_widths_grow_with_n(three_state_pfa, unary_afa):
    widths = [
        logspace.run_gt_cutpoint(three_state_pfa, _space_word(n)).trace.max_register_bits
        for n in (1, 10, 100, 1000)
    ]
    assert widths == sorted(widths)
    widths = [
        logspace.compare_affine(unary_afa, "a" * n).trace.max_register_bits
        for n in (1, 10, 100)
    ]
    assert widths == sorted(widths)


def test_compare_affine_order(two_thirds_afa, half_afa):
    assert logspace.compare_affine(two_thirds_afa, "ab").result is Order.GT
    assert logspace.compare_affine(half_afa, "aa").result is Order.EQ
    decision = logspace.run_rns(half_afa, "aa", kind="exclusive")
    assert decision.result is False
    assert logspace.run_rns(two_thirds_afa, "ab", kind="exclusive").result is True


def test_prebuilt_machines_reject_unknown_symbols(halving_pfa, two_thirds_afa):
    ipfa = logspace.clear_denominators(halving_pfa)
    emb = logspace.turakainen_embed(two_thirds_afa)
    with pytest.raises(UnknownSymbol):
        logspace.decide_gt_cutpoint_rns(ipfa, "ab")
    with pytest.raises(UnknownSymbol):
        logspace.decide_eq_cutpoint_rns(ipfa, "b")
    with pytest.raises(UnknownSymbol):
        logspace.decide_affine_cutpoint_rns(emb, "ac")


def test_basis_choice_logged_at_info(halving_pfa, caplog):
    with caplog.at_level(logging.INFO, logger="afasim.logspace"):
        decision = logspace.run_gt_cutpoint(halving_pfa, "aa")
    assert "{} primes".format(decision.basis.r) in caplog.text
