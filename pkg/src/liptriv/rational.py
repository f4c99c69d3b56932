"""Minimal rational-mapping support: indeterminacy and invariance checks.

Rational maps are kept as one numerator/denominator pair per component.
These checks exist to witness that the polynomial factorization theorem has
no rational analogue; no Ltv classification is attempted for rational input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dependence import Subspace, kernel_basis
from .groebner import (
    DEFAULT_BUDGET,
    GroebnerBudget,
    Ideal,
    MonomialOrder,
    buchberger,
    is_unit_ideal,
)
from .parsing import print_polynomial
from .polycore import PolyMap, Polynomial


@dataclass(frozen=True)
class RationalMap:
    """Componentwise fractions num_i/den_i over a shared ring."""

    vars: tuple[str, ...]
    numerators: tuple[Polynomial, ...]
    denominators: tuple[Polynomial, ...]
    name: str = "f"

    def __post_init__(self):
        if len(self.numerators) != len(self.denominators):
            raise ValueError("component count mismatch")
        if not self.numerators:
            raise ValueError("a mapping needs at least one component")
        for q in self.numerators + self.denominators:
            if q.vars != self.vars:
                raise ValueError("components live in different rings")
        for q in self.denominators:
            if q.is_zero():
                raise ValueError("zero denominator")

    @property
    def n(self) -> int:
        return len(self.vars)

    @property
    def p(self) -> int:
        return len(self.numerators)

    def is_polynomial(self) -> bool:
        return all(
            d.is_constant() and d.constant_value() == 1 for d in self.denominators
        )

    def to_polymap(self) -> PolyMap:
        if not self.is_polynomial():
            raise ValueError("mapping has nontrivial denominators")
        return PolyMap(self.vars, self.numerators, self.name)

    def evaluate_float(self, point: Sequence[float]) -> tuple[float, ...]:
        out = []
        for num, den in zip(self.numerators, self.denominators):
            out.append(num.eval_float(point) / den.eval_float(point))
        return tuple(out)

    def jacobian_float(self, point: Sequence[float]) -> list[list[float]]:
        """Quotient-rule Jacobian evaluated at a float point."""
        rows = []
        for num, den in zip(self.numerators, self.denominators):
            nv = num.eval_float(point)
            dv = den.eval_float(point)
            row = []
            for j in range(self.n):
                npv = num.partial(j).eval_float(point)
                dpv = den.partial(j).eval_float(point)
                row.append((npv * dv - nv * dpv) / (dv * dv))
            rows.append(row)
        return rows


def is_one_plus_sum_of_squares(p: Polynomial) -> bool:
    """Syntactic certificate p = c0 + (positive coefficients) * (even monomials).

    Such a polynomial is bounded below by c0 > 0 on all of R^n, hence has no
    real zeros.  This covers denominators of the shape 1 + sum x_i^2.
    """
    constant = p.coefficient((0,) * p.nvars)
    if constant <= 0:
        return False
    for exp, coeff in p.terms:
        if sum(exp) == 0:
            continue
        if coeff <= 0 or any(k % 2 for k in exp):
            return False
    return True


@dataclass(frozen=True)
class IndeterminacyVerdict:
    status: str  # "PASS" | "FAIL"
    per_component: tuple[dict, ...]


def indeterminacy_empty_check(
    r: RationalMap, budget: GroebnerBudget = DEFAULT_BUDGET
) -> IndeterminacyVerdict:
    """PASS when no component's numerator and denominator vanish together.

    The unit ideal <num, den> certifies emptiness over C (hence over R); a
    denominator of the form c0 + sum-of-squares certifies real emptiness even
    when the complex common zero set is nonempty.
    """
    details = []
    status = "PASS"
    for num, den in zip(r.numerators, r.denominators):
        entry: dict = {}
        if den.is_constant():
            entry["certificate"] = "constant denominator"
            entry["verdict"] = "PASS"
            details.append(entry)
            continue
        if is_one_plus_sum_of_squares(den):
            # den >= c0 > 0 on R^n: no real zeros at all, so no real common zeros.
            entry["certificate"] = "sum_of_squares"
            entry["detail"] = "denominator is a positive constant plus a sum of even squares"
            entry["verdict"] = "PASS"
            details.append(entry)
            continue
        pair = Ideal.make(r.vars, [num, den])
        if is_unit_ideal(pair, budget):
            entry["certificate"] = "unit_ideal"
            entry["detail"] = "numerator and denominator generate the unit ideal over C"
            entry["verdict"] = "PASS"
            details.append(entry)
            continue
        gb = buchberger(pair, MonomialOrder.grevlex(), budget)
        entry["verdict"] = "FAIL"
        entry["common_zero_ideal"] = [print_polynomial(g) for g in gb.basis]
        status = "FAIL"
        details.append(entry)
    return IndeterminacyVerdict(status, tuple(details))


@dataclass(frozen=True)
class RationalInvarianceResult:
    subspace: Subspace
    closed_under_addition: bool
    verified_directions: tuple[tuple[Fraction, ...], ...]


def rational_invariance_subspace(r: RationalMap) -> RationalInvarianceResult:
    """Directions v with d_v(num)*den - num*d_v(den) = 0 for every component.

    The defining condition is linear in v, so the candidate kernel is already
    a subspace; each basis vector and all pairwise sums are nevertheless
    re-verified symbolically before the subspace is reported.
    """
    n = r.n
    rows: list[list[Fraction]] = []
    for num, den in zip(r.numerators, r.denominators):
        # Coefficient rows of d_j(num)*den - num*d_j(den), stacked over monomials.
        conditions = [num.partial(j) * den - num * den.partial(j) for j in range(n)]
        monomials = sorted({e for q in conditions for e, _ in q.terms})
        for mono in monomials:
            rows.append([q.coefficient(mono) for q in conditions])
    if rows:
        vectors = kernel_basis(rows, n)
    else:
        vectors = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    candidate = Subspace.from_vectors(n, vectors)

    def qualifies(v: Sequence[Fraction]) -> bool:
        for num, den in zip(r.numerators, r.denominators):
            acc = Polynomial.zero(r.vars)
            for j, vj in enumerate(v):
                if vj:
                    acc = acc + (num.partial(j) * den - num * den.partial(j)) * vj
            if not acc.is_zero():
                return False
        return True

    verified = [v for v in candidate.basis if qualifies(v)]
    closed = True
    for i in range(len(verified)):
        for j in range(i + 1, len(verified)):
            s = tuple(a + b for a, b in zip(verified[i], verified[j]))
            if not qualifies(s):
                closed = False
    subspace = Subspace.from_vectors(n, verified) if closed else Subspace.from_vectors(n, [])
    if len(verified) == len(candidate.basis) and closed:
        subspace = candidate
    return RationalInvarianceResult(subspace, closed, tuple(verified))
