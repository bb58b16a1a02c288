import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from bdshift import CanonicalFunction, InputError, NonCanonicalError, ShiftSpec, Word, golden_mean, shift
from bdshift.decomposition import (
    check_free_concatenation, decompose, in_G_M, is_in_B, is_in_G, pad_to_G, sync_check, tau,
)
from bdshift.language import words


class TestClasses:
    @pytest.mark.parametrize("w,expected", [("10", True), ("", True), ("001", False)])
    def test_B(self, golden, w, expected):
        assert is_in_B(golden, w) is expected

    @pytest.mark.parametrize("w,expected", [("00100", True), ("0010", False), ("", True)])
    def test_G(self, golden, w, expected):
        assert is_in_G(golden, w) is expected

    def test_inadmissible(self, golden):
        with pytest.raises(InputError):
            is_in_B(golden, "11")

    def test_non_canonical(self):
        with pytest.raises(NonCanonicalError):
            is_in_G(shift(["1", "3"], 1), "1")


class TestDecompose:
    @pytest.mark.parametrize("z,parts", [("101", ("101", "", "")), ("00101", ("", "0", "0101")),
                                         ("", ("", "", ""))])
    def test_examples(self, golden, z, parts):
        r = decompose(golden, z)
        assert (str(r.u), str(r.y), str(r.w)) == parts

    def test_exhaustive_f35(self, f35):
        a = f35.alpha
        for n in range(1, 10):
            for row in words(f35, n):
                r = decompose(f35, Word(row))
                assert r.joined() == Word(row)
                assert oracles.in_B(r.u.letters, a) and oracles.in_B(r.w.letters, a)
                assert oracles.in_G(r.y.letters, a)

    def test_inadmissible(self, golden):
        with pytest.raises(InputError):
            decompose(golden, "0110")


class TestPadding:
    def test_G_M_examples(self, golden):
        assert in_G_M(golden, "00100", 0)
        assert in_G_M(golden, "1001001", 1)
        assert not in_G_M(golden, "101", 0)

    def test_tau(self, golden):
        assert tau(golden, 2) == 8
        assert tau(golden, 0) == 0
        spec = ShiftSpec(CanonicalFunction.ceiling(Fraction(6, 5)))
        assert tau(spec, 1) == math.ceil(4 / Fraction(6, 5))

    def test_tau_zero_alpha(self, zero):
        with pytest.raises(InputError):
            tau(zero, 1)

    def test_pad_examples(self, golden):
        assert pad_to_G(golden, "00100", 0) == "00100"
        assert pad_to_G(golden, "1", 1) == "000010000"

    def test_pad_precondition(self, golden):
        with pytest.raises(InputError):
            pad_to_G(golden, "101", 0)


class TestConcatenation:
    def test_examples(self, golden):
        assert check_free_concatenation(golden, ["00100", "00100"])
        assert check_free_concatenation(golden, [""])

    def test_non_G_is_error(self, golden):
        with pytest.raises(InputError):
            check_free_concatenation(golden, ["00100", "10"])


class TestSync:
    def test_golden(self, golden):
        assert sync_check(golden, 1, 8).verdict == "NoCounterexample"
        report = sync_check(golden, 0, 8)
        assert report.verdict == "Counterexample"
        assert tuple(str(x) for x in report.counterexample) == ("1", "1")

    def test_f35_long_reset(self, f35):
        # 0^M with M = L * m / alpha clears the density budget of any context of length L
        L = 4
        M = math.ceil(L * f35.max_letter / f35.alpha)
        assert sync_check(f35, M, L).verdict == "NoCounterexample"

    def test_f35_short_gap_fails(self, f35):
        report = sync_check(f35, 1, 6)
        assert report.verdict == "Counterexample"
        u, w = report.counterexample
        zero = Word([0])
        from bdshift import is_admissible
        assert is_admissible(f35, u + zero) and is_admissible(f35, zero + w)
        assert not is_admissible(f35, u + zero + w)


# ----------------------------------------------------------------------------
# properties

SPECS = [golden_mean(), ShiftSpec(CanonicalFunction.ceiling(Fraction(3, 5))),
         ShiftSpec(CanonicalFunction.ceiling(Fraction(3, 2)))]


def _admissible(spec, max_len):
    return st.lists(st.integers(0, spec.max_letter), max_size=max_len).filter(
        lambda w: oracles.admissible(spec.function, w))


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_decompose_round_trip(data):
    spec = data.draw(st.sampled_from(SPECS))
    z = data.draw(_admissible(spec, 16))
    r = decompose(spec, z)
    assert r.joined() == Word(z)
    assert oracles.in_B(r.u.letters, spec.alpha)
    assert oracles.in_B(r.w.letters, spec.alpha)
    assert oracles.in_G(r.y.letters, spec.alpha)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_G_concatenation(data):
    spec = data.draw(st.sampled_from(SPECS))
    gs = [data.draw(_admissible(spec, 8).filter(lambda w: oracles.in_G(w, spec.alpha)))
          for _ in range(data.draw(st.integers(1, 3)))]
    assert check_free_concatenation(spec, gs)


def random_G_M_word(spec, rng, max_len=10):
    """Random admissible word of G(M) for some M, as (z, M)."""
    while True:
        n = rng.randint(0, max_len)
        z = tuple(rng.randint(0, spec.max_letter) for _ in range(n))
        if not oracles.admissible(spec.function, z):
            continue
        M = rng.randint(0, 4)
        if in_G_M(spec, z, M):
            return z, M


def test_pad_random():
    rng = random.Random(7)
    for spec in SPECS:
        for _ in range(300):
            z, M = random_G_M_word(spec, rng)
            t = tau(spec, M)
            padded = pad_to_G(spec, z, M)
            assert len(padded) == len(z) + 2 * t
            assert oracles.in_G(padded.letters, spec.alpha)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SPECS), st.integers(0, 20))
def test_tau_ceiling_contract(spec, M):
    t = tau(spec, M)
    bound = Fraction(2 * M * spec.max_letter) / spec.alpha
    assert t >= bound and t - 1 < bound
