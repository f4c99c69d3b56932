"""Exact polynomial arithmetic: examples and algebraic invariants."""

import random
from fractions import Fraction

import pytest

from conftest import poly, rand_poly
from liptriv.polycore import LinearMap, PolyMap, Polynomial

XY = ("x", "y")
XYZ = ("x", "y", "z")


class TestArithmetic:
    def test_difference_of_squares(self):
        assert poly(XY, "x + y") * poly(XY, "x - y") == poly(XY, "x^2 - y^2")

    def test_additive_identity(self):
        p = poly(XY, "3*x^2*y - 1/2*y")
        assert p + Polynomial.zero(XY) == p

    def test_monomial_product_adds_exponents(self):
        # x^2*y times x*y^4: exponents (2,1) + (1,4) = (3,5).
        assert poly(XY, "x^2*y") * poly(XY, "x*y^4") == poly(XY, "x^3*y^5")

    def test_ring_mismatch_rejected(self):
        with pytest.raises(ValueError, match="ring mismatch"):
            poly(XY, "x") + poly(XYZ, "x")

    def test_product_degree_adds(self):
        rng = random.Random(7)
        for _ in range(50):
            a = rand_poly(rng, XY, 4)
            b = rand_poly(rng, XY, 4)
            if a.is_zero() or b.is_zero():
                continue
            assert (a * b).degree == a.degree + b.degree

    def test_exponent_overflow_guard(self):
        big = Polynomial.from_dict(("x",), {(2**30,): Fraction(1)})
        with pytest.raises(OverflowError):
            big * big


class TestPartialDerivative:
    def test_degree_six_polynomial(self, motzkin_poly):
        # d/dx of x^4*y^2 + x^2*y^4 - 3*x^2*y^2 + 1, differentiated by hand.
        inner = motzkin_poly.drop_vars([2])
        assert inner.partial(0) == poly(XY, "4*x^3*y^2 + 2*x*y^4 - 6*x*y^2")

    def test_shear_component(self):
        assert poly(XYZ, "x*y + x*z").partial(2) == poly(XYZ, "x")

    def test_constant(self):
        assert poly(XY, "5").partial(0).is_zero()

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            poly(XY, "x").partial(2)

    def test_leibniz_rule(self):
        rng = random.Random(11)
        for _ in range(200):
            p = rand_poly(rng, XY, 3)
            q = rand_poly(rng, XY, 3)
            lhs = (p * q).partial(0)
            rhs = p * q.partial(0) + q * p.partial(0)
            assert lhs == rhs


class TestDirectionalDerivative:
    def test_invariant_direction_annihilates(self, simple_map):
        dd = simple_map.directional_derivative([0, 1, -1])
        assert all(c.is_zero() for c in dd.components)

    def test_non_invariant_direction(self, bad_map):
        dd = bad_map.directional_derivative([0, 1, -1])
        assert dd.components[0].is_zero()
        assert dd.components[1] == poly(XYZ, "x - 1")

    def test_zero_direction(self, simple_map):
        dd = simple_map.directional_derivative([0, 0, 0])
        assert all(c.is_zero() for c in dd.components)

    def test_linearity_in_direction(self, bad_map):
        rng = random.Random(3)
        for _ in range(100):
            u = [Fraction(rng.randint(-3, 3)) for _ in range(3)]
            v = [Fraction(rng.randint(-3, 3)) for _ in range(3)]
            w = [a + b for a, b in zip(u, v)]
            left = bad_map.directional_derivative(w)
            du = bad_map.directional_derivative(u)
            dv = bad_map.directional_derivative(v)
            assert left.components == tuple(
                a + b for a, b in zip(du.components, dv.components)
            )


class TestComposeLinear:
    def test_identity(self, simple_map):
        assert simple_map.compose_linear(LinearMap.identity(3)).components == simple_map.components

    def test_swap_symmetric(self):
        f = PolyMap(XY, (poly(XY, "x*y"),))
        swap = LinearMap.from_rows([[0, 1], [1, 0]])
        assert f.compose_linear(swap, new_vars=XY).components == f.components

    def test_sum_substitution_expands(self):
        f = PolyMap(("x",), (poly(("x",), "x^2"),))
        lin = LinearMap.from_rows([[1, 1]])
        composed = f.compose_linear(lin, new_vars=("u", "v"))
        assert composed.components[0] == poly(("u", "v"), "u^2 + 2*u*v + v^2")

    def test_evaluation_commutes(self):
        rng = random.Random(19)
        f = PolyMap(XY, (rand_poly(rng, XY, 3), rand_poly(rng, XY, 3)))
        for _ in range(100):
            rows = [[Fraction(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]
            lin = LinearMap.from_rows(rows)
            x = [Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))]
            composed = f.compose_linear(lin, new_vars=XY)
            assert composed.evaluate(x) == f.evaluate(lin.apply(x))


class TestHomogenize:
    def test_pads_with_new_variable(self):
        h = poly(XYZ, "x*y + z").homogenize(2)
        assert h == poly(("x0",) + XYZ, "x*y + z*x0")

    def test_homogeneous_input_unchanged(self):
        p = poly(XY, "x^2 + x*y")
        h = p.homogenize(2)
        assert not h.uses_var(0)
        assert h.dehomogenize(0) == p

    def test_constant(self):
        h = poly(XY, "1").homogenize(3)
        assert h == poly(("x0",) + XY, "x0^3")

    def test_degree_too_small(self):
        with pytest.raises(ValueError):
            poly(XY, "x^2").homogenize(1)

    def test_dehomogenize_inverts(self):
        rng = random.Random(23)
        for _ in range(200):
            p = rand_poly(rng, XYZ, 5)
            if p.is_zero():
                continue
            h = p.homogenize(p.degree + rng.randint(0, 2))
            assert h.is_homogeneous()
            assert h.dehomogenize(0) == p


class TestLeadingForm:
    def test_top_degree_terms(self, motzkin_poly):
        inner = motzkin_poly.drop_vars([2])
        assert inner.leading_form() == poly(XY, "x^4*y^2 + x^2*y^4")

    def test_homogeneous_fixed_point(self):
        p = poly(XY, "x^2 + x*y")
        assert p.leading_form() == p

    def test_affine(self):
        assert poly(XY, "x + 1").leading_form() == poly(XY, "x")

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            Polynomial.zero(XY).leading_form()


class TestEvaluate:
    def test_exact_point(self, simple_map):
        assert simple_map.evaluate([1, 2, 3]) == (Fraction(1), Fraction(5))

    def test_at_origin_gives_constants(self, bad_map):
        assert bad_map.evaluate([0, 0, 0]) == (Fraction(0), Fraction(0))

    def test_degree_six_zero(self, motzkin_map):
        # 1 + 1 - 3 + 1 = 0: the value 0 is attained.
        assert motzkin_map.evaluate([1, 1, 0]) == (Fraction(0),)

    def test_dimension_mismatch(self, simple_map):
        with pytest.raises(ValueError):
            simple_map.evaluate([1, 2])

    def test_float_matches_exact(self):
        rng = random.Random(29)
        for _ in range(100):
            p = rand_poly(rng, XY, 4)
            x = [rng.randint(-3, 3), rng.randint(-3, 3)]
            assert p.eval_float([float(v) for v in x]) == pytest.approx(
                float(p.eval_exact(x)), rel=1e-12, abs=1e-12
            )

    def test_float_error_bound(self):
        p = poly(XY, "x^3*y - 7*x + 2")
        value, bound = p.eval_float_with_error([1.5, -2.25])
        exact = float(p.eval_exact([Fraction(3, 2), Fraction(-9, 4)]))
        assert abs(value - exact) <= bound


class TestCanonicalForm:
    def test_add_then_subtract_roundtrip(self):
        rng = random.Random(31)
        for _ in range(1000):
            a = rand_poly(rng, XYZ, 6)
            b = rand_poly(rng, XYZ, 6)
            assert a + b - b == a

    def test_terms_sorted_and_nonzero(self):
        rng = random.Random(37)
        from liptriv.polycore import grevlex_key

        for _ in range(200):
            p = rand_poly(rng, XYZ, 5)
            keys = [grevlex_key(e) for e, _ in p.terms]
            assert keys == sorted(keys, reverse=True)
            assert all(c != 0 for _, c in p.terms)

    def test_equal_polynomials_identical_terms(self):
        a = poly(XY, "x*y + x*y + 2") - poly(XY, "x*y")
        b = poly(XY, "2 + x*y")
        assert a == b and a.terms == b.terms
