import math
import random

import pytest

from zinv.polynomial import Polynomial


def close(p, q, tol=1e-12):
    hi = max(p.degree, q.degree)
    return all(abs(p.coeff(i) - q.coeff(i)) <= tol for i in range(hi + 1))


class TestDivRem:
    def test_cubic_by_quadratic(self):
        num = Polynomial([1, 0, 0, 1])  # z^3 + 1
        den = Polynomial([1, 0, 1])  # z^2 + 1
        q, r = divmod(num, den)
        assert q == Polynomial([0, 1])
        assert r == Polynomial([1, -1])

    def test_lower_degree_numerator(self):
        q, r = divmod(Polynomial([2, 1]), Polynomial([1, 0, 1]))
        assert q.is_zero
        assert r == Polynomial([2, 1])

    def test_identity_case(self):
        q, r = divmod(Polynomial([1, 0, 1]), Polynomial([1, 0, 1]))
        assert q == Polynomial([1])
        assert r.is_zero

    def test_zero_denominator_raises(self):
        with pytest.raises(ZeroDivisionError, match="zero denominator"):
            divmod(Polynomial([1, 1]), Polynomial([]))

    def test_reconstruction_random(self):
        # tolerance scales with the quotient magnitude: a divisor drawn with a
        # tiny leading coefficient blows the quotient up, and reconstruction
        # is backward stable relative to that scale, not to p's
        rng = random.Random(7)
        for _ in range(300):
            p = Polynomial([rng.uniform(-5, 5) for _ in range(rng.randint(1, 9))])
            d = Polynomial([rng.uniform(-5, 5) for _ in range(rng.randint(1, 9))])
            if d.is_zero:
                continue
            q, r = divmod(p, d)
            scale = max(1.0, q.norm_inf * d.norm_inf * (d.degree + 1))
            assert close(q * d + r, p, 1e-12 * scale)
            assert r.degree < d.degree

    def test_reconstruction_exact_for_ints(self):
        rng = random.Random(8)
        for _ in range(200):
            p = Polynomial([rng.randint(-5, 5) for _ in range(rng.randint(1, 9))])
            d = Polynomial([rng.randint(-5, 5) for _ in range(rng.randint(1, 9))])
            if d.is_zero or abs(d.leading) != 1:
                continue
            q, r = divmod(p, d)
            assert q * d + r == p


class TestDerivative:
    def test_power_rule(self):
        p = Polynomial([-8, 12, -6, 1])
        assert p.derivative() == Polynomial([12, -12, 3])

    def test_order_zero_is_identity(self):
        p = Polynomial([1.5, 0, 2])
        assert p.derivative(0) == p

    def test_second_derivative(self):
        assert Polynomial([1, 0, 1]).derivative(2) == Polynomial([2])

    def test_linearity_exact(self):
        rng = random.Random(3)
        for _ in range(100):
            p = Polynomial([rng.randint(-9, 9) for _ in range(rng.randint(0, 8))])
            q = Polynomial([rng.randint(-9, 9) for _ in range(rng.randint(0, 8))])
            assert (p + q).derivative() == p.derivative() + q.derivative()


class TestEval:
    def test_simple(self):
        assert Polynomial([1, 0, 1])(1) == 2

    def test_complex_root(self):
        assert Polynomial([1, 0, 1])(1j) == 0

    def test_zero_polynomial(self):
        assert Polynomial([])(3.7) == 0

    def test_int_preserved(self):
        assert isinstance(Polynomial([1, 2, 3])(2), int)


class TestFromFactors:
    def test_linear_cube(self):
        p = Polynomial.from_factors(linear=[(2, 3)])
        assert p == Polynomial([-8, 12, -6, 1])

    def test_unit_quadratic(self):
        assert Polynomial.from_factors(quadratic=[(0, 1, 1)]) == Polynomial([1, 0, 1])

    def test_general_quadratic(self):
        assert Polynomial.from_factors(quadratic=[(1, 2, 1)]) == Polynomial([5, -2, 1])

    def test_degenerate_quadratic_rejected(self):
        with pytest.raises(ValueError, match="degenerate quadratic"):
            Polynomial.from_factors(quadratic=[(1, 0, 1)])

    def test_bad_multiplicity_rejected(self):
        with pytest.raises(ValueError):
            Polynomial.from_factors(linear=[(2, 0)])


class TestHousekeeping:
    def test_trim_and_degree(self):
        assert Polynomial([1, 2, 0, 0]).degree == 1
        assert Polynomial([0, 0]).degree == -1
        assert Polynomial([]).is_zero

    def test_float_trim_eps(self):
        assert Polynomial([1.0, 5e-13]).degree == 0
        assert Polynomial([1.0, 5e-13], trim_eps=0.0).degree == 1

    def test_int_coeffs_survive_monic_division(self):
        num = Polynomial([3, 0, 0, 2, 1])
        den = Polynomial([1, 1])
        q, r = divmod(num, den)
        assert all(isinstance(c, int) for c in q.coeffs)
        assert all(isinstance(c, int) for c in r.coeffs)

    def test_shift(self):
        assert Polynomial([1, 2]).shift(2) == Polynomial([0, 0, 1, 2])

    def test_str_readable(self):
        assert str(Polynomial([-8, 12, -6, 1])) == "z^3 - 6*z^2 + 12*z - 8"
        assert str(Polynomial([])) == "0"
        assert str(Polynomial([0, 1])) == "z"
