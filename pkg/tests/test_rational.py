"""Rational mappings: indeterminacy certificates and invariance directions."""

import random
from fractions import Fraction

from conftest import poly, rand_poly
from liptriv.classifier import RATIONAL_NOT_APPLICABLE, classify_rational
from liptriv.dependence import invariance_subspace
from liptriv.parsing import parse_input
from liptriv.polycore import PolyMap, Polynomial
from liptriv.rational import (
    RationalMap,
    indeterminacy_empty_check,
    is_one_plus_sum_of_squares,
    rational_invariance_subspace,
)

F = Fraction
XY = ("x", "y")


class TestIndeterminacy:
    def test_regulous_graph_passes_with_sos_certificate(self, regulous_map):
        verdict = indeterminacy_empty_check(regulous_map)
        assert verdict.status == "PASS"
        assert verdict.per_component[0]["certificate"] == "sum_of_squares"

    def test_coordinate_quotient_fails(self):
        r = parse_input("ring Q[x,y]; ratmap f: (x / y)")
        verdict = indeterminacy_empty_check(r)
        assert verdict.status == "FAIL"
        assert "common_zero_ideal" in verdict.per_component[0]

    def test_polynomial_component_passes(self):
        r = parse_input("ring Q[x,y]; ratmap f: (x*y + x)")
        verdict = indeterminacy_empty_check(r)
        assert verdict.status == "PASS"
        assert verdict.per_component[0]["certificate"] == "constant denominator"

    def test_unit_ideal_certificate(self):
        # Numerator 1 never vanishes: common zero set empty over C.
        r = parse_input("ring Q[x,y]; ratmap f: (1 / x)")
        verdict = indeterminacy_empty_check(r)
        assert verdict.status == "PASS"
        assert verdict.per_component[0]["certificate"] == "unit_ideal"


class TestSumOfSquaresPattern:
    def test_accepts_one_plus_squares(self):
        assert is_one_plus_sum_of_squares(poly(XY, "1 + x^2 + y^2"))
        assert is_one_plus_sum_of_squares(poly(XY, "2 + 3*x^4*y^2"))

    def test_rejects_odd_or_negative(self):
        assert not is_one_plus_sum_of_squares(poly(XY, "1 + x"))
        assert not is_one_plus_sum_of_squares(poly(XY, "1 - x^2"))
        assert not is_one_plus_sum_of_squares(poly(XY, "x^2"))


class TestRationalInvariance:
    def test_regulous_graph_has_no_direction(self, regulous_map):
        result = rational_invariance_subspace(regulous_map)
        assert result.subspace.dim == 0
        assert result.closed_under_addition

    def test_unused_variable_direction(self):
        r = parse_input("ring Q[x,y]; ratmap f: (1 / (x^2 + 1))")
        result = rational_invariance_subspace(r)
        assert result.subspace.basis == ((F(0), F(1)),)

    def test_consistent_with_polynomial_module(self):
        rng = random.Random(83)
        ring = ("x", "y", "z")
        one = Polynomial.constant(ring, 1)
        done = 0
        while done < 100:
            comps = tuple(rand_poly(rng, ring, 3) for _ in range(rng.randint(1, 2)))
            if any(c.is_zero() for c in comps):
                continue
            f = PolyMap(ring, comps)
            r = RationalMap(ring, comps, tuple(one for _ in comps))
            assert rational_invariance_subspace(r).subspace == invariance_subspace(f)
            done += 1


class TestClassifyRational:
    def test_not_applicable_with_counterexample_evidence(self, regulous_map):
        rep = classify_rational(regulous_map)
        assert rep.ltv.kind == "not_applicable"
        assert rep.ltv.reason == RATIONAL_NOT_APPLICABLE
        names = {c.name: c for c in rep.checks}
        assert names["indeterminacy_empty"].verdict == "PASS"
        assert names["rational_invariance"].verdict == "ZERO"
        assert names["gradient_bound"].verdict == "BOUNDED"
        assert names["gradient_bound"].data["bound"] <= 2.0

    def test_polynomial_ratmap_gets_full_pipeline(self):
        r = parse_input("ring Q[x,y]; ratmap f: ((x + y)^3 / 1)")
        rep = classify_rational(r, "complex")
        assert rep.ltv.kind == "complement"
