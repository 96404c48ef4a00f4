from fractions import Fraction

import pytest

from icefold.cyclotomic import Cyclotomic, cyclotomic_polynomial


class TestCyclotomicPolynomial:
    def test_small_orders(self):
        assert cyclotomic_polynomial(1) == (Fraction(-1), Fraction(1))
        assert cyclotomic_polynomial(2) == (Fraction(1), Fraction(1))
        assert cyclotomic_polynomial(3) == (Fraction(1), Fraction(1), Fraction(1))
        assert cyclotomic_polynomial(4) == (Fraction(1), Fraction(0), Fraction(1))
        assert cyclotomic_polynomial(6) == (Fraction(1), Fraction(-1), Fraction(1))

    def test_degree_is_totient(self):
        totient = {1: 1, 2: 1, 3: 2, 4: 2, 5: 4, 6: 2, 8: 4, 12: 4}
        for m, phi in totient.items():
            assert len(cyclotomic_polynomial(m)) - 1 == phi


class TestArithmetic:
    def test_root_of_unity_power_relation(self):
        z = Cyclotomic.root_of_unity(4, 1)
        assert z * z == Cyclotomic.root_of_unity(4, 2)
        assert z * z * z * z == Cyclotomic.one(4)
        assert z * z == Cyclotomic.rational(4, -1)

    def test_order_two(self):
        z = Cyclotomic.root_of_unity(2, 1)
        assert z == Cyclotomic.rational(2, -1)
        assert z * z == Cyclotomic.one(2)

    def test_sum_of_all_roots_vanishes(self):
        for m in (2, 3, 4, 6):
            total = Cyclotomic.zero(m)
            for k in range(m):
                total = total + Cyclotomic.root_of_unity(m, k)
            assert total.is_zero()

    def test_conjugate(self):
        z = Cyclotomic.root_of_unity(3, 1)
        assert z.conjugate() == Cyclotomic.root_of_unity(3, 2)
        assert (z * z.conjugate()) == Cyclotomic.one(3)

    def test_rational_detection(self):
        z = Cyclotomic.root_of_unity(3, 1)
        s = z + z.conjugate()
        assert s.is_rational()
        assert s.as_rational() == Fraction(-1)
        with pytest.raises(ValueError):
            z.as_rational()

    def test_rational_scalars(self):
        z = Cyclotomic.root_of_unity(4, 1)
        assert (z * Fraction(1, 2)) + (z * Fraction(1, 2)) == z
        assert (z / 2) * 2 == z

    def test_mixed_orders_rejected(self):
        with pytest.raises(TypeError):
            Cyclotomic.one(2) + Cyclotomic.one(3)
