from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphpoly.errors import DivisibilityError
from graphpoly.polynomial import (
    BiPoly,
    Poly,
    divide_exact,
    f_eval_2i,
    f_poly,
    f_values,
    poly_from_json,
    poly_to_json,
)

X = Poly.x()
small_polys = st.dictionaries(st.integers(0, 6), st.integers(-9, 9), max_size=5).map(Poly)


class TestFPoly:
    @pytest.mark.parametrize("n, want", [(0, Poly(1)), (1, Poly()), (2, Poly(1)), (3, X), (4, X**2 + 1)])
    def test_first_values(self, n, want):
        assert f_poly(n) == want

    def test_product_identity(self):
        for n in range(1, 13):
            for m in range(1, 13):
                assert f_poly(n + m - 2) == f_poly(n) * f_poly(m) + f_poly(n - 1) * f_poly(m - 1)

    def test_chebyshev_link(self):
        rng = random.Random(1)
        for _ in range(20):
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            u = [1, 2 * z]
            for n in range(2, 11):
                u.append(2 * z * u[-1] - u[-2])
            for n in range(11):
                assert abs(f_poly(n + 2)(2j * z) - 1j**n * u[n]) <= 1e-9 * max(1, abs(u[n]))

    def test_parity_at_zero(self):
        assert [f_poly(n)(0) for n in range(12)] == [1 - n % 2 for n in range(12)]

    def test_closed_form(self):
        rng = random.Random(2)
        for _ in range(20):
            xi = Fraction(rng.choice([-1, 1]) * rng.randint(1, 40), rng.randint(1, 40))
            for n in range(12):
                lhs = f_poly(n).evaluate(xi - 1 / xi) * (xi + 1 / xi)
                assert lhs == xi ** (n - 1) - (-xi) ** (1 - n)

    def test_even_index_coefficients(self):
        for k in range(1, 9):
            want = Poly({2 * l: comb(k + l - 1, 2 * l) for l in range(k)})
            assert f_poly(2 * k) == want

    def test_numeric_table(self):
        assert f_values(3, 6) == [f_poly(n)(3) for n in range(7)]

    @pytest.mark.parametrize("n, want", [(0, (1, 0)), (2, (1, 0)), (3, (0, 2)), (1, (0, 0))])
    def test_at_2i(self, n, want):
        assert f_eval_2i(n) == want

    def test_at_2i_matches_evaluation(self):
        for n in range(15):
            v = f_poly(n)(2j)
            assert f_eval_2i(n) == (round(v.real), round(v.imag))


class TestPolyArithmetic:
    def test_no_stored_zeros(self):
        p = Poly({0: 1, 3: 0}) + Poly({0: -1})
        assert p.is_zero() and p.coeffs == {} and p.degree == -1

    def test_divide_examples(self):
        assert divide_exact(1 - X**2, 1 - X) == 1 + X
        p = 3 + 5 * X**4
        assert divide_exact(p, Poly(1)) == p

    def test_divide_failure(self):
        with pytest.raises(DivisibilityError):
            divide_exact(1 + X**2, 1 - X)

    @given(small_polys, small_polys.filter(lambda d: not d.is_zero() and abs(d.leading()) == 1))
    def test_divmod_reconstructs(self, p, d):
        q, r = p.divmod(d)
        assert q * d + r == p and r.degree < d.degree

    @given(small_polys, small_polys, st.fractions(max_denominator=7))
    def test_ring_homomorphism(self, p, q, x):
        assert (p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x)
        assert (p - q).evaluate(x) == p.evaluate(x) - q.evaluate(x)

    @given(small_polys, st.integers(1, 4), st.fractions(max_denominator=5))
    def test_compose_power(self, p, m, x):
        assert p.compose_power(m).evaluate(x) == p.evaluate(x**m)

    def test_str(self):
        assert str(1 - 2 * X**3) == "1 - 2*x^3"


class TestBiPoly:
    def test_substitutions(self):
        p = BiPoly({(0, 0): 1, (2, 2): 3, (1, 1): -1})
        assert p.substitute_second(0) == Poly(1)
        assert p.substitute_second(2) == 1 - 2 * X + 12 * X**2
        re, im = p.specialize_second_2i()
        assert re == 1 - 12 * X**2 and im == -2 * X

    def test_arithmetic(self):
        b = BiPoly({(1, 0): 1})
        g = BiPoly({(0, 1): 1})
        assert ((b + g) ** 2)[(1, 1)] == 2
        assert (b * g - g * b).is_zero()

    def test_evaluate(self):
        p = BiPoly({(1, 2): 2, (0, 0): 1})
        assert p.evaluate(Fraction(1, 2), 3) == 10


class TestJson:
    def test_round_trip_uni(self):
        p = 1 - 7 * X**5 + 12345678901234567890 * X**2
        data = poly_to_json(p)
        assert data["vars"] == ["beta"]
        assert data["terms"][1] == {"beta": 2, "coeff": "12345678901234567890"}
        assert poly_from_json(data) == p

    def test_round_trip_bi(self):
        p = BiPoly({(0, 0): 1, (5, 2): 6, (6, 4): 1})
        assert poly_from_json(poly_to_json(p)) == p

    @given(small_polys)
    def test_round_trip_property(self, p):
        assert poly_from_json(poly_to_json(p)) == p
