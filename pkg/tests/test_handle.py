import pytest
from hypothesis import given, settings, strategies as st

from braidwork.garside import is_trivial, words_equal
from braidwork.handle import (
    ReductionBudgetExceeded,
    handle_reduce,
    is_trivial_handle_reduction,
    shift_preimage,
)
from braidwork.words import BraidWord, compose, identity, invert, shift, unshift


def words(n: int, max_len: int = 10):
    nonzero = st.integers(min_value=1, max_value=n - 1).flatmap(
        lambda i: st.sampled_from([i, -i])
    )
    return st.lists(nonzero, max_size=max_len).map(
        lambda ls: BraidWord(n, tuple(ls))
    )


class TestHandleReduce:
    def test_identity_fixed(self):
        assert handle_reduce(identity(3)) == identity(3)

    def test_simple_handle(self):
        assert handle_reduce(BraidWord(3, (1, -1))) == identity(3)

    def test_nested_handle(self):
        w = BraidWord(3, (1, 2, -1))
        assert words_equal(handle_reduce(w), w)

    @given(words(4))
    @settings(max_examples=80)
    def test_preserves_element(self, w):
        assert words_equal(handle_reduce(w), w)

    @given(words(4))
    @settings(max_examples=80)
    def test_output_has_no_main_handle(self, w):
        out = handle_reduce(w)
        signs = {1 if x > 0 else -1 for x in out.letters if abs(x) == 1}
        assert len(signs) <= 1

    def test_budget(self):
        w = BraidWord(4, (1, 2, -1, 3, -2, 1, -3))
        with pytest.raises(ReductionBudgetExceeded):
            handle_reduce(w, budget=1)


class TestTrivialityOracle:
    @given(words(4))
    @settings(max_examples=150)
    def test_agrees_with_normal_form(self, w):
        assert is_trivial_handle_reduction(w) == is_trivial(w)

    @given(words(4, 6))
    @settings(max_examples=50)
    def test_commutator_with_inverse(self, w):
        assert is_trivial_handle_reduction(compose(w, invert(w)))


class TestShiftPreimage:
    @given(words(4, 6))
    @settings(max_examples=60)
    def test_recovers_shifted_element(self, w):
        pre = shift_preimage(shift(w))
        assert words_equal(pre, w)

    def test_recovers_through_disguise(self):
        w = BraidWord(3, (2, -1, 2))
        disguised = compose(BraidWord(4, (1, -1)), shift(w))
        assert words_equal(shift_preimage(disguised), w)

    def test_rejects_non_image(self):
        with pytest.raises(ValueError):
            shift_preimage(BraidWord(3, (1,)))

    def test_unshift_is_syntactic_counterpart(self):
        w = BraidWord(4, (2, 3))
        assert unshift(w) == BraidWord(3, (1, 2))
