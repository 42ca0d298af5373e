import math
import random

import pytest

from zinv.corpus import random_rational
from zinv.errors import FactorizationError
from zinv.factorize import (
    FactoredDenominator,
    LinearFactor,
    QuadraticFactor,
    factor_denominator,
)
from zinv.pfe import (
    RationalFunction,
    complex_pfe_over_z,
    real_pfe,
    recombine,
)
from zinv.polynomial import Polynomial


def rf(num, den):
    return RationalFunction(Polynomial(num), Polynomial(den))


def poly_close(p, q, tol):
    hi = max(p.degree, q.degree)
    return all(abs(p.coeff(i) - q.coeff(i)) <= tol for i in range(hi + 1))


class TestRealPfe:
    def test_single_quadratic(self):
        x = rf([1], [1, 0, 1])
        f = FactoredDenominator(0, (), (QuadraticFactor(0.0, 1.0, 1),), 1)
        pf = real_pfe(x, f)
        assert pf.poly_part.is_zero
        assert pf.origin_terms == () and pf.real_terms == ()
        (t,) = pf.quad_terms
        assert (t.a, t.b, t.j) == (0.0, 1.0, 1)
        assert t.z_amp == 0.0 and t.const_amp == 1.0

    def test_linear_times_quadratic(self):
        # 1/((z-1)(z^2+1)): A = 1/2 on the pole, (-z/2 - 1/2) on the pair;
        # frozen from recombining over the common denominator by hand
        den = Polynomial.from_factors(linear=[(1, 1)], quadratic=[(0, 1, 1)])
        x = RationalFunction(Polynomial([1]), den)
        f = FactoredDenominator(
            0, (LinearFactor(1.0, 1),), (QuadraticFactor(0.0, 1.0, 1),), 1
        )
        pf = real_pfe(x, f)
        (lt,) = pf.real_terms
        assert (lt.r, lt.j) == (1.0, 1)
        assert lt.amp == 0.5
        (qt,) = pf.quad_terms
        assert qt.z_amp == -0.5 and qt.const_amp == -0.5

    def test_improper_gets_polynomial_part(self):
        x = rf([1, 0, 0, 1], [1, 0, 1])  # (z^3+1)/(z^2+1)
        f = FactoredDenominator(0, (), (QuadraticFactor(0.0, 1.0, 1),), 1)
        pf = real_pfe(x, f)
        assert pf.poly_part == Polynomial([0, 1])
        (qt,) = pf.quad_terms
        assert qt.z_amp == -1.0 and qt.const_amp == 1.0

    def test_repeated_pair_structure_exact(self):
        den = Polynomial.from_factors(quadratic=[(1, 1, 3)])
        x = RationalFunction(Polynomial([3, 2]), den)
        f = FactoredDenominator(0, (), (QuadraticFactor(1.0, 1.0, 3),), 1)
        pf = real_pfe(x, f)
        by_j = {t.j: t for t in pf.quad_terms}
        assert by_j[1].z_amp == 0.0 and by_j[1].const_amp == 0.0
        assert by_j[2].z_amp == 0.0 and by_j[2].const_amp == 0.0
        assert by_j[3].z_amp == 2.0 and by_j[3].const_amp == 3.0

    def test_mismatched_factorization_rejected(self):
        x = rf([1], [1, 0, 1])
        wrong = FactoredDenominator(0, (LinearFactor(1.0, 2),), (), 1)
        with pytest.raises(FactorizationError, match="inconsistent factorization"):
            real_pfe(x, wrong)

    def test_condition_estimate_attached(self):
        x = rf([1], [1, 0, 1])
        f = FactoredDenominator(0, (), (QuadraticFactor(0.0, 1.0, 1),), 1)
        pf = real_pfe(x, f)
        assert pf.condition >= 1.0
        assert pf.warnings == ()

    def test_ill_conditioned_system_warns(self):
        # nearly coincident poles make the coefficient system near-singular
        f = FactoredDenominator(
            0, (LinearFactor(1.0, 1), LinearFactor(1.0 + 1e-12, 1)), (), 1
        )
        x = RationalFunction(Polynomial([1]), f.expand())
        pf = real_pfe(x, f)
        assert pf.condition > 1e12
        assert any("ill-conditioned" in w for w in pf.warnings)


class TestComplexPfeOverZ:
    def test_unit_quadratic(self):
        # 1/(z^2+1): Y = 1/(z(z^2+1)) -> 1 at the origin, -1/2 at +/-i
        cp = complex_pfe_over_z(rf([1], [1, 0, 1]))
        got = {t.pole: t.coeff for t in cp.terms}
        assert got[0j] == 1.0
        assert got[1j] == -0.5
        assert got[-1j] == -0.5
        assert cp.max_asymmetry <= 1e-8

    def test_shared_z_cancels(self):
        # z/(z-1): Y = 1/(z-1), one simple pole with unit coefficient
        cp = complex_pfe_over_z(rf([0, 1], [-1, 1]))
        (t,) = cp.terms
        assert t.pole == 1.0 and t.j == 1
        assert t.coeff == 1.0

    def test_origin_coefficient_of_multiple_pair(self):
        # (2z+3)/((z^2-2z+2)^3): coefficient at the origin of Y is 3/r^6 = 3/8
        den = Polynomial.from_factors(quadratic=[(1, 1, 3)])
        cp = complex_pfe_over_z(RationalFunction(Polynomial([3, 2]), den))
        at0 = {t.j: t.coeff for t in cp.terms if t.pole == 0}
        assert at0[1] == pytest.approx(0.375, abs=1e-12)

    def test_conjugate_closure_exact(self):
        rng = random.Random(31)
        for _ in range(20):
            x, _ = random_rational(rng)
            cp = complex_pfe_over_z(x)
            by_key = {(t.pole, t.j): t.coeff for t in cp.terms}
            for (pole, j), c in by_key.items():
                if pole.imag != 0:
                    assert by_key[(pole.conjugate(), j)] == c.conjugate()
                else:
                    assert c.imag == 0.0
            assert cp.max_asymmetry <= 1e-8


class TestRecombine:
    def test_round_trip_single_quadratic(self):
        x = rf([1], [1, 0, 1])
        f = FactoredDenominator(0, (), (QuadraticFactor(0.0, 1.0, 1),), 1)
        back = recombine(real_pfe(x, f))
        assert poly_close(back.num, x.num, 1e-12)
        assert poly_close(back.den, x.den, 1e-12)

    def test_poly_part_only(self):
        pf = real_pfe(
            rf([0, 1], [1]),
            FactoredDenominator(0, (), (), 1),
        )
        back = recombine(pf)
        assert back.num == Polynomial([0, 1])
        assert back.den == Polynomial([1])

    def test_hand_checked_expansion(self):
        den = Polynomial.from_factors(linear=[(1, 1)], quadratic=[(0, 1, 1)])
        x = RationalFunction(Polynomial([1]), den)
        f = FactoredDenominator(
            0, (LinearFactor(1.0, 1),), (QuadraticFactor(0.0, 1.0, 1),), 1
        )
        back = recombine(real_pfe(x, f))
        assert poly_close(back.num, x.num, 1e-10)
        assert poly_close(back.den, x.den, 1e-10)

    def test_round_trip_random_corpus(self):
        rng = random.Random(500)
        for _ in range(500):
            x, f = random_rational(rng)
            pf = real_pfe(x, f)
            back = recombine(pf)
            scale = max(1.0, x.num.norm_inf, x.den.norm_inf)
            assert poly_close(back.num, x.num, 1e-8 * scale)
            assert poly_close(back.den, x.den, 1e-8 * scale)


class TestUniqueness:
    def test_permuted_factor_order_same_coefficients(self):
        rng = random.Random(77)
        for _ in range(25):
            x, f = random_rational(rng)
            pf1 = real_pfe(x, f)
            perm = FactoredDenominator(
                f.origin_mult,
                tuple(reversed(f.linears)),
                tuple(reversed(f.quadratics)),
                f.scale,
            )
            pf2 = real_pfe(x, perm)
            key1 = {(t.r, t.j): t.amp for t in pf1.real_terms}
            key2 = {(t.r, t.j): t.amp for t in pf2.real_terms}
            assert key1.keys() == key2.keys()
            for k in key1:
                assert abs(key1[k] - key2[k]) <= 1e-10 * max(1.0, abs(key1[k]))
            q1 = {(t.a, t.b, t.j): (t.z_amp, t.const_amp) for t in pf1.quad_terms}
            q2 = {(t.a, t.b, t.j): (t.z_amp, t.const_amp) for t in pf2.quad_terms}
            assert q1.keys() == q2.keys()
            for k in q1:
                for v1, v2 in zip(q1[k], q2[k]):
                    assert abs(v1 - v2) <= 1e-10 * max(1.0, abs(v1))


class TestRationalFunction:
    def test_monic_normalization(self):
        x = rf([2], [-4, 2])
        assert x.den == Polynomial([-2.0, 1.0])
        assert x.num == Polynomial([1.0])

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            rf([1], [])

    def test_integer_coefficients_survive_when_monic(self):
        x = rf([3, 2], [2, -2, 1])
        assert all(isinstance(c, int) for c in x.num.coeffs)
        assert all(isinstance(c, int) for c in x.den.coeffs)
