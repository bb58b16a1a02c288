from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from bdshift import (
    CanonicalFunction, InputError, Word, build_x_alpha, canonicalize, check_containment,
    eval_f, golden_mean, hereditary_reduce, is_admissible, limiting_gradient, shift,
    validate_canonical,
)
from bdshift.core import ShiftSpec, containment_witness, dump_spec, load_spec, to_fraction


class TestWord:
    def test_parse_forms(self):
        assert Word.parse("0101") == (0, 1, 0, 1)
        assert Word.parse("0,1,12") == (0, 1, 12)
        for empty in ("", "ε", "eps", "-"):
            assert len(Word.parse(empty)) == 0

    def test_str_round_trip(self):
        for text in ("0101", "0,1,12"):
            assert str(Word.parse(text)) == text

    def test_window_sum_and_slices(self):
        w = Word.parse("20110")
        assert w.window_sum(1, 3) == 2
        assert isinstance(w[1:3], Word)
        assert w[1:3] + w[:1] == "012"
        assert w.mean() == Fraction(4, 5)

    def test_rejects_negative_letters(self):
        with pytest.raises(InputError):
            Word([0, -1])


class TestFractions:
    def test_rejects_floats(self):
        with pytest.raises(InputError):
            to_fraction(0.5)
        with pytest.raises(InputError):
            to_fraction(True)

    def test_accepts_strings_and_ints(self):
        assert to_fraction("3/5") == Fraction(3, 5)
        assert to_fraction(2) == 2


class TestCanonicalFunction:
    def test_golden_values(self, golden):
        assert eval_f(golden, 3) == 2
        assert [int(golden.bound(n)) for n in range(1, 9)] == [1, 1, 2, 2, 3, 3, 4, 4]

    def test_ceiling_floors(self):
        for a in (Fraction(1, 2), Fraction(3, 5), Fraction(3, 2), Fraction(2, 7)):
            fn = CanonicalFunction.ceiling(a)
            assert validate_canonical(fn).ok
            for n in range(1, 40):
                assert int(fn(n)) == -(-a.numerator * n // a.denominator)

    def test_alpha(self, golden, f35, zero):
        assert limiting_gradient(golden) == Fraction(1, 2)
        assert limiting_gradient(f35) == Fraction(3, 5)
        assert limiting_gradient(zero) == 0

    def test_non_canonical_report(self):
        report = validate_canonical(CanonicalFunction((Fraction(1), Fraction(3)), 1))
        assert not report.ok
        assert report.subadditivity_violations
        assert report.complete

    def test_non_monotone_report(self):
        report = validate_canonical(CanonicalFunction((Fraction(2), Fraction(1)), 1))
        assert report.monotone_violations

    def test_unknown_key_rejected(self):
        with pytest.raises(InputError):
            ShiftSpec.from_dict({"table": ["1"], "tail_slope": "1/2", "bogus": 1})

    def test_round_trip_json(self, tmp_path, f35):
        path = tmp_path / "s.json"
        dump_spec(f35, path)
        again = load_spec(path)
        assert again == f35
        assert again.digest() == f35.digest()


class TestMembership:
    def test_golden_equals_no_11(self, golden):
        import itertools
        for n in range(1, 11):
            for w in itertools.product((0, 1), repeat=n):
                no11 = not any(w[i] and w[i + 1] for i in range(n - 1))
                assert is_admissible(golden, w) == no11

    def test_letter_outside_alphabet(self, golden):
        with pytest.raises(InputError):
            is_admissible(golden, "2")

    @pytest.mark.parametrize("w,expected", [("11", False), ("101", True), ("", True), ("1011", False)])
    def test_examples(self, golden, w, expected):
        assert is_admissible(golden, w) is expected

    def test_hereditary_reduce_contract(self, golden):
        assert hereditary_reduce(golden, "1010", "1000")
        with pytest.raises(InputError):
            hereditary_reduce(golden, "1010", "1100")
        with pytest.raises(InputError):
            hereditary_reduce(golden, "1010", "101")


class TestCanonicalize:
    def test_example(self):
        spec = shift(["1", "3"], 1)
        fhat = canonicalize(spec, 4)
        assert fhat(2) == 2
        assert validate_canonical(fhat).ok

    @pytest.mark.parametrize("n_prime", range(1, 8))
    def test_golden_fixed(self, golden, n_prime):
        fhat = canonicalize(golden, n_prime)
        assert validate_canonical(fhat).ok
        assert ShiftSpec(fhat).alpha == Fraction(1, 2)
        for p in range(1, n_prime + 1):
            assert int(fhat(p)) == (p + 1) // 2
            assert oracles.all_words(fhat, p) == oracles.all_words(golden.function, p)

    @pytest.mark.parametrize("table,slope", [
        (["1", "3"], 1), (["2", "2", "5"], "1/2"), (["1", "1", "3"], "2/3"), (["3/2", "4"], "3/4"),
    ])
    def test_language_preserved(self, table, slope):
        spec = shift(table, slope)
        fhat = canonicalize(spec, 6)
        assert validate_canonical(fhat).ok
        for p in range(1, 7):
            assert oracles.all_words(fhat, p) == oracles.all_words(spec.function, p)

    def test_zero(self, zero):
        fhat = canonicalize(zero, 4)
        assert all(fhat(p) == 0 for p in range(12))

    def test_idempotent(self):
        spec = shift(["1", "3"], 1)
        once = canonicalize(spec, 5)
        twice = canonicalize(ShiftSpec(once), 5)
        assert once == twice


class TestContainment:
    def test_x_alpha_inside(self, golden, f35):
        for spec in (golden, f35):
            assert check_containment(build_x_alpha(spec.alpha), spec, 10)

    def test_witness(self, golden):
        w = containment_witness(golden, build_x_alpha(Fraction(1, 2)), 6)
        assert w == "1"

    def test_x_alpha_floors(self):
        x = build_x_alpha(Fraction(3, 5))
        assert [x.bound(n) for n in range(1, 11)] == [(3 * n) // 5 for n in range(1, 11)]


# ----------------------------------------------------------------------------
# properties

functions = st.builds(
    lambda a, b: CanonicalFunction.ceiling(Fraction(a, b)),
    st.integers(0, 7), st.integers(1, 5),
)


@settings(max_examples=60, deadline=None)
@given(functions, st.integers(1, 40))
def test_f_dominates_alpha_line(fn, n):
    assert fn(n) >= ShiftSpec(fn).alpha * n


def _admissible_words(spec, max_len=10):
    alphabet = st.integers(0, spec.max_letter)
    return st.lists(alphabet, max_size=max_len).filter(lambda w: is_admissible(spec, w))


@settings(max_examples=250, deadline=None)
@given(st.data())
def test_hereditary(data):
    spec = data.draw(st.sampled_from([golden_mean(), ShiftSpec(CanonicalFunction.ceiling(Fraction(3, 5))),
                                      ShiftSpec(CanonicalFunction.ceiling(Fraction(3, 2)))]))
    w = data.draw(_admissible_words(spec))
    v = [data.draw(st.integers(0, a)) for a in w]
    assert hereditary_reduce(spec, w, v)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_factorial(data):
    spec = data.draw(st.sampled_from([golden_mean(), ShiftSpec(CanonicalFunction.ceiling(Fraction(3, 2)))]))
    w = data.draw(_admissible_words(spec, 12))
    i = data.draw(st.integers(0, len(w)))
    j = data.draw(st.integers(i, len(w)))
    assert is_admissible(spec, w[i:j])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=3), st.integers(0, 4), st.integers(1, 6))
def test_canonicalize_idempotent(table, slope_num, n_prime):
    table = sorted(table)
    spec = shift(table, Fraction(slope_num, 2))
    once = canonicalize(spec, n_prime)
    assert validate_canonical(once).ok
    assert canonicalize(ShiftSpec(once), n_prime) == once
