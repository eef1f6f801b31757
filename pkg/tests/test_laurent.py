import pytest
from hypothesis import given, settings, strategies as st

from qkcomin.laurent import (
    LaurentElement,
    NotDivisibleError,
    TailNotFixedError,
    TailedScalarSeries,
    exact_div_binomial,
)


def L(text, nvars=2):
    return LaurentElement.parse(text, nvars)


class TestRingOps:
    def test_add_cancels(self):
        a = L("1 - t1*t2^-1")
        b = L("t1*t2^-1")
        assert a + b == LaurentElement.one(2)

    def test_zero_absorbs(self):
        x = L("3*t1 - t2^-2")
        assert LaurentElement.zero(2) * x == LaurentElement.zero(2)

    def test_difference_of_squares(self):
        a = L("1 - t1*t2^-1")
        b = L("1 + t1*t2^-1")
        assert a * b == L("1 - t1^2*t2^-2")

    def test_int_coercion(self):
        a = L("t1")
        assert 1 + a == L("1 + t1")
        assert 2 * a == L("2*t1")
        assert a - 1 == L("-1 + t1")

    def test_mixed_widths_rejected(self):
        with pytest.raises(ValueError):
            L("t1", 1) + L("t1", 2)


class TestDivision:
    def test_self_quotient(self):
        g = L("1 - t1*t2^-1")
        assert exact_div_binomial(g, g) == LaurentElement.one(2)

    def test_factorization(self):
        f = L("1 - t1^2*t2^-2")
        g = L("1 - t1*t2^-1")
        assert exact_div_binomial(f, g) == L("1 + t1*t2^-1")

    def test_not_divisible(self):
        f = L("1 + t1", 1)
        g = L("1 - t1", 1)
        with pytest.raises(NotDivisibleError):
            exact_div_binomial(f, g)

    def test_geometric_ladder(self):
        f = L("1 - t1^3", 1)
        g = L("1 - t1", 1)
        assert exact_div_binomial(f, g) == L("1 + t1 + t1^2", 1)

    def test_disjoint_ladders(self):
        f = (L("1 - t1^3", 1)) + L("t1^10", 1) - L("t1^12", 1)
        g = L("1 - t1", 1)
        h = exact_div_binomial(f, g)
        assert h * g == f

    def test_bad_divisor(self):
        with pytest.raises(ValueError):
            exact_div_binomial(L("1"), L("2 - t1"))
        with pytest.raises(ValueError):
            exact_div_binomial(L("1"), L("1 - 2*t1"))


class TestSpecialize:
    def test_binomial_vanishes(self):
        assert L("1 - t1*t2^-1").specialize_ones() == 0

    def test_one(self):
        assert LaurentElement.one(2).specialize_ones() == 1

    def test_substitute_letters(self):
        # t1 -> z^0, t2 -> z^1 collapses 2 variables to 1
        f = L("1 - t1*t2^-1")
        z = f.substitute_letters(((0,), (1,)), 1)
        assert z == L("1 - t1^-1", 1)

    def test_substitute_to_integers(self):
        f = L("3 - t1*t2^-1")
        c = f.substitute_letters(((), ()), 0)
        assert c == LaurentElement.integer(0, 2)
        assert str(c) == "2"

    def test_swap_letters(self):
        f = L("1 - t1^2*t2^-1")
        assert f.swap_letters(1) == L("1 - t1^-1*t2^2")

    def test_permute_letters(self):
        f = LaurentElement.parse("t1*t3^-1", 3)
        assert f.permute_letters((3, 2, 1)) == LaurentElement.parse("t1^-1*t3", 3)


class TestGrammar:
    @pytest.mark.parametrize(
        "text",
        ["0", "1", "-1", "3", "1 - t1*t2^-1", "-t1^-1*t2 + 1", "t2^3 + 2*t1",
         "t1^-1*t2", "-2 + 3*t1^2*t2^-2"],
    )
    def test_roundtrip(self, text):
        assert str(L(text)) == text

    def test_canonical_order_is_ascending_lex(self):
        f = L("t1*t2^-1") + 1
        assert str(f) == "1 + t1*t2^-1"
        g = L("t1^-1*t2") - 1
        assert str(g) == "t1^-1*t2 - 1"

    @pytest.mark.parametrize("bad", ["t0", "1 +", "2t1", "t1^1", "t1*t1", "*t1", "x"])
    def test_rejects_malformed(self, bad):
        with pytest.raises(ValueError):
            L(bad)


exps = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
elements = st.dictionaries(exps, st.integers(-9, 9), max_size=6).map(
    lambda d: LaurentElement(2, d)
)
monomials = st.tuples(st.integers(-2, 2), st.integers(-2, 2)).filter(
    lambda e: e != (0, 0)
)


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(elements, elements, elements)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c

    @settings(max_examples=60, deadline=None)
    @given(elements, monomials)
    def test_division_roundtrip(self, h, mexp):
        g = LaurentElement.one(2) - LaurentElement.monomial(2, mexp)
        assert exact_div_binomial(h * g, g) == h

    @settings(max_examples=60, deadline=None)
    @given(elements, elements)
    def test_specialize_is_ring_hom(self, a, b):
        assert (a * b).specialize_ones() == a.specialize_ones() * b.specialize_ones()
        assert (a + b).specialize_ones() == a.specialize_ones() + b.specialize_ones()

    @settings(max_examples=40, deadline=None)
    @given(st.lists(elements, max_size=3), elements)
    def test_shift_result_degree_bounded(self, heads, tail):
        s = TailedScalarSeries(heads, tail)
        coeffs = s.apply_one_minus_q_shift()
        assert len(coeffs) <= s.stabilization + 1


class TestTailedSeries:
    def test_constant_one_series(self):
        one = LaurentElement.one(2)
        s = TailedScalarSeries([], one)
        assert s.apply_one_minus_q_shift() == (one,)

    def test_pure_tail_from_degree_one(self):
        # sum_{d>=1} q^d collapses to the single monomial q
        zero = LaurentElement.zero(2)
        one = LaurentElement.one(2)
        s = TailedScalarSeries([zero], one)
        coeffs = s.apply_one_minus_q_shift()
        assert coeffs == (zero, one)

    def test_head_then_constant(self):
        # series 0 + c q + c q^2 + ...; expanding (1-q)*series by hand:
        # c q + c q^2 + ... - (c q^2 + ...) = c q exactly
        c = L("1 - t1*t2^-1") + L("3*t1")
        zero = LaurentElement.zero(2)
        s = TailedScalarSeries([zero, c], c)
        assert s.apply_one_minus_q_shift() == (zero, c)

    def test_normalization_merges_tail(self):
        one = LaurentElement.one(2)
        s = TailedScalarSeries([one, one], one)
        assert s.stabilization == 0

    def test_shift_must_fix_tail(self):
        one = LaurentElement.one(2)
        s = TailedScalarSeries([], one)
        with pytest.raises(TailNotFixedError):
            s.apply_one_minus_q_shift(lambda x: x + 1)

    def test_add_and_scale(self):
        one = LaurentElement.one(2)
        zero = LaurentElement.zero(2)
        a = TailedScalarSeries([zero], one)
        b = TailedScalarSeries([one], one)
        assert (a + b).coefficient(0) == one
        assert (a + b).coefficient(5) == 2 * one
        assert a.scale(3 * one).coefficient(7) == 3 * one


def test_doctest_module():
    import doctest
    import qkcomin.laurent as mod

    failures, _ = doctest.testmod(mod)
    assert failures == 0
