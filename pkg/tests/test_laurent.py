from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icefold.errors import NonExactDivision
from icefold.laurent import Laurent, project_exponents


def L(nvars, terms):
    return Laurent(nvars, {e: Fraction(c) for e, c in terms.items()})


class TestBasics:
    def test_zero_terms_dropped(self):
        p = L(2, {(0, 0): 1, (1, 0): 0})
        assert p.terms == {(0, 0): Fraction(1)}

    def test_arithmetic(self):
        x = Laurent.variable(0, 2)
        y = Laurent.variable(1, 2)
        p = (x + y) * (x - y)
        assert p == x * x - y * y

    def test_negative_exponents(self):
        x = Laurent.variable(0, 1)
        inv = Laurent.monomial((-1,))
        assert x * inv == Laurent.one(1)

    def test_to_string(self):
        p = L(2, {(1, 0): 1, (-1, 1): 2})
        assert p.to_string(["a", "b"]) == "(a^2 + 2*b)/a"
        q = L(2, {(-1, -2): 1})
        assert q.to_string(["a", "b"]) == "1/(a*b^2)"
        r = L(2, {(1, 1): 1, (0, 0): 1})
        assert r.to_string(["a", "b"]) == "a*b + 1"


class TestDivision:
    def test_monomial_division(self):
        p = L(2, {(1, 0): 1, (0, 1): 1})
        q = p / Laurent.variable(0, 2)
        assert q == L(2, {(0, 0): 1, (-1, 1): 1})

    def test_exact_polynomial_division(self):
        x = Laurent.variable(0, 1)
        one = Laurent.one(1)
        p = (x + one) * (x + one) * (x - one)
        assert p / (x + one) == (x + one) * (x - one)

    def test_inexact_division_raises(self):
        x = Laurent.variable(0, 1)
        one = Laurent.one(1)
        with pytest.raises(NonExactDivision):
            (x * x + one) / (x + one)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            Laurent.one(1) / Laurent.zero(1)

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_product_then_divide_roundtrip(self, data):
        nvars = data.draw(st.integers(1, 3))
        exps = st.tuples(*(st.integers(-2, 2) for _ in range(nvars)))
        coeffs = st.fractions(min_value=-3, max_value=3).filter(lambda x: x != 0)
        terms = st.dictionaries(exps, coeffs, min_size=1, max_size=4)
        p = Laurent(nvars, data.draw(terms))
        q = Laurent(nvars, data.draw(terms))
        assert (p * q) / q == p


class TestProjection:
    def test_exponent_sums(self):
        p = L(3, {(1, 2, -1): 1, (0, 1, 1): 3})
        out = project_exponents(p, [0, 1, 0], 2)
        assert out == L(2, {(0, 2): 1, (1, 1): 3})

    def test_projection_can_merge_terms(self):
        p = L(2, {(1, 0): 1, (0, 1): 1})
        out = project_exponents(p, [0, 0], 1)
        assert out == L(1, {(1,): 2})
