"""Maximal linear invariance subspace and the factorization f = g o pi.

A direction v is an invariance direction of f when the directional derivative
of every component along v vanishes identically.  Those directions form a
linear subspace V; f factors exactly through the projection along V onto any
complement, and the reduced mapping has no invariance direction left.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .polycore import LinearMap, PolyMap, Polynomial, as_fraction, fresh_name


def _clear_denominators(rows: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _fraction_free_echelon(m: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Bareiss fraction-free elimination; returns echelon rows and pivot columns."""
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    m = [row[:] for row in m]
    prev = 1
    r = 0
    pivots = []
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            for j in range(ncols):
                if j == col:
                    continue
                m[i][j] = (m[r][col] * m[i][j] - m[i][col] * m[r][j]) // prev
            m[i][col] = 0
        prev = m[r][col]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form over Q (Bareiss forward pass, exact back-substitution)."""
    cleaned = [[as_fraction(x) for x in row] for row in rows if any(x != 0 for x in row)]
    if not cleaned:
        return [], []
    echelon, pivots = _fraction_free_echelon(_clear_denominators(cleaned))
    work = [[Fraction(x) for x in row] for row in echelon]
    for i in reversed(range(len(work))):
        col = pivots[i]
        inv = 1 / work[i][col]
        work[i] = [x * inv for x in work[i]]
        for k in range(i):
            f = work[k][col]
            if f:
                work[k] = [a - f * b for a, b in zip(work[k], work[i])]
    return work, pivots


def kernel_basis(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel, one vector per free column, in RREF shape."""
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for j in free:
        vec = [Fraction(0)] * ncols
        vec[j] = Fraction(1)
        for i, col in enumerate(pivots):
            vec[col] = -reduced[i][j]
        basis.append(tuple(vec))
    return basis


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of K^n, basis stored in reduced row-echelon form."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def from_vectors(ambient_dim: int, vectors: Sequence[Sequence[Fraction]]) -> "Subspace":
        reduced, _ = rref([list(v) for v in vectors])
        return Subspace(ambient_dim, tuple(tuple(row) for row in reduced))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, vector: Sequence[Fraction]) -> bool:
        stacked = [list(b) for b in self.basis] + [[as_fraction(x) for x in vector]]
        reduced, _ = rref(stacked)
        return len(reduced) == self.dim

    def pivot_columns(self) -> list[int]:
        return [next(j for j, x in enumerate(row) if x != 0) for row in self.basis]


@dataclass(frozen=True)
class FactorizationResult:
    """Data of f = g o pi with pi surjective linear and g fully reduced."""

    V: Subspace
    m: int
    ell: LinearMap  # invertible n x n; first dim(V) columns span V
    pi: LinearMap  # surjective n -> m
    g: PolyMap


def invariance_subspace(f: PolyMap) -> Subspace:
    """Maximal subspace of directions v with the derivative of f along v zero.

    Solved as the exact kernel of the linear system whose rows are, for every
    component i and every monomial of its gradient, the coefficient vector
    over j of d f_i / d x_j.
    """
    n = f.n
    rows: list[list[Fraction]] = []
    for comp in f.components:
        partials = [comp.partial(j) for j in range(n)]
        monomials = sorted({e for q in partials for e, _ in q.terms})
        for mono in monomials:
            rows.append([q.coefficient(mono) for q in partials])
    if not rows:
        return Subspace.from_vectors(
            n, [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        )
    return Subspace.from_vectors(n, kernel_basis(rows, n))


def _complement_positions(sub: Subspace) -> list[int]:
    pivots = set(sub.pivot_columns())
    return [j for j in range(sub.ambient_dim) if j not in pivots]


def factor_through_projection(f: PolyMap) -> FactorizationResult:
    """Factor f as g o pi with g free of invariance directions.

    The change of coordinates ell has the echelon basis of V as its first
    columns, extended by standard unit vectors at the non-pivot positions;
    that keeps g's coefficients small and pins a deterministic result.
    """
    n = f.n
    sub = invariance_subspace(f)
    if sub.dim == 0:
        identity = LinearMap.identity(n)
        return FactorizationResult(sub, n, identity, identity, f)

    free = _complement_positions(sub)
    m = len(free)
    columns = [list(b) for b in sub.basis]
    for j in free:
        columns.append([Fraction(int(i == j)) for i in range(n)])
    ell = LinearMap.from_columns(columns)

    composed = f.compose_linear(ell, new_vars=tuple(f"u{i + 1}" for i in range(n)))
    for comp in composed.components:
        for idx in range(sub.dim):
            if comp.uses_var(idx):
                raise AssertionError("composition still depends on an invariance direction")

    if m == 0:
        # Constant mapping; g lives on a one-variable dummy domain onto whose
        # zero subspace pi collapses everything.
        dummy = (fresh_name("u1", f.vars),)
        g_components = tuple(
            Polynomial.constant(dummy, comp.constant_value()) for comp in composed.components
        )
        g = PolyMap(dummy, g_components, f.name)
        pi = LinearMap.from_rows([[Fraction(0)] * n])
        return FactorizationResult(sub, 0, ell, pi, g)

    # Rename the surviving coordinates back to the original variable names at
    # the complement positions (keeps reports readable and makes suspension
    # round-trips exact).
    reduced_vars = tuple(f.vars[j] for j in free)
    renamed = tuple(
        Polynomial(reduced_vars, comp.drop_vars(range(sub.dim)).terms)
        for comp in composed.components
    )
    g = PolyMap(reduced_vars, renamed, f.name)

    projection_rows = [
        [Fraction(int(j == sub.dim + i)) for j in range(n)] for i in range(m)
    ]
    pi = LinearMap.from_rows(projection_rows).compose(ell.inverse())
    return FactorizationResult(sub, m, ell, pi, g)


def verify_factorization(f: PolyMap, result: FactorizationResult) -> bool:
    """Check the exact polynomial identity f = g o pi."""
    if result.m == 0:
        point = [Fraction(0)] * result.g.n
        values = result.g.evaluate(point)
        return all(
            comp.is_constant() and comp.constant_value() == val
            for comp, val in zip(f.components, values)
        )
    composed = result.g.compose_linear(result.pi, new_vars=f.vars)
    return composed.components == f.components


def suspend(g: PolyMap, extra_vars: int) -> PolyMap:
    """Extend the domain by unused coordinates: returns g o pi0, pi0 dropping them."""
    if extra_vars < 0:
        raise ValueError("extra_vars must be non-negative")
    if extra_vars == 0:
        return g
    names = list(g.vars)
    for i in range(extra_vars):
        names.append(fresh_name(f"s{i + 1}", names))
    vs = tuple(names)
    comps = tuple(c.embed(vs) for c in g.components)
    return PolyMap(vs, comps, g.name)
