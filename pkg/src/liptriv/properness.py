"""Non-properness analysis: exact Jelonek set over C, numeric probes over R.

The exact path closes the graph of the mapping in projective space over the
source, cuts with the hyperplane at infinity, and projects to the target;
the resulting variety is the set of values at which the complex mapping is
not proper.  Real properness at individual values is probed numerically by
minimizing |g(x) - c| over spheres of growing radius.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .groebner import (
    DEFAULT_BUDGET,
    GroebnerBudget,
    Ideal,
    dimension,
    eliminate,
    intersect,
    saturate,
)
from .polycore import LinearMap, PolyMap, Polynomial, as_fraction, fresh_name


@dataclass(frozen=True)
class JelonekIdeal:
    """Ideal in the target coordinates whose variety is J(g) over C."""

    ideal: Ideal
    target_vars: tuple[str, ...]

    def is_empty_set(self) -> bool:
        """True when J(g) = empty, i.e. the ideal is the unit ideal."""
        return any(
            g.is_constant() and not g.is_zero() for g in self.ideal.generators
        )

    def vanishes_at(self, c: Sequence[Fraction]) -> bool:
        return all(g.eval_exact(list(c)) == 0 for g in self.ideal.generators)


def target_ring(p: int, taken: Sequence[str] = ()) -> tuple[str, ...]:
    """Names t1..tp for the value space, avoiding collisions with taken names."""
    names: list[str] = []
    pool = list(taken)
    for i in range(p):
        name = fresh_name(f"t{i + 1}", pool)
        names.append(name)
        pool.append(name)
    return tuple(names)


def jelonek_ideal(
    g: PolyMap,
    budget: GroebnerBudget = DEFAULT_BUDGET,
    tvars: tuple[str, ...] | None = None,
) -> JelonekIdeal:
    """Exact ideal of the complex non-properness set of g.

    Construction: homogenize each component to its degree with x0, impose
    g_i = t_i on the affine chart via gh_i - t_i*x0^{d_i}, saturate by x0
    (closure of the graph), cut with x0 = 0, saturate by the irrelevant ideal
    of the source projective space, and eliminate all source variables.
    """
    tvars = tvars or target_ring(g.p, g.vars)
    constant_parts: list[tuple[int, Fraction]] = []
    moving: list[tuple[int, Polynomial]] = []
    for i, comp in enumerate(g.components):
        if comp.is_constant():
            constant_parts.append((i, comp.constant_value()))
        else:
            moving.append((i, comp))

    tring = tvars
    extra: list[Polynomial] = []
    for i, value in constant_parts:
        extra.append(
            Polynomial.variable(tring, i) - Polynomial.constant(tring, value)
        )

    if not moving:
        # Constant mapping: not proper exactly at its value (m >= 1).
        return JelonekIdeal(Ideal.make(tring, extra), tvars)

    hom_var = fresh_name("x0", g.vars + tring)
    ring = (hom_var,) + g.vars + tring
    x0 = Polynomial.variable(ring, 0)

    gens = []
    for i, comp in moving:
        d = comp.degree
        gh = comp.homogenize(d, hom_var).embed(ring)
        ti = Polynomial.variable(ring, 1 + g.n + i)
        gens.append(gh - ti * x0**d)

    graph = Ideal.make(ring, gens)
    closed = saturate(graph, x0, budget)
    at_infinity = Ideal.make(ring, list(closed.generators) + [x0])

    # Remove the irrelevant locus x1 = ... = xm = 0 of the source projective
    # space: saturate by the irrelevant ideal, i.e. intersect the saturations
    # by the individual source variables.
    cleaned: Ideal | None = None
    for j in range(g.n):
        xj = Polynomial.variable(ring, 1 + j)
        part = saturate(at_infinity, xj, budget)
        cleaned = part if cleaned is None else intersect(cleaned, part, budget)

    assert cleaned is not None
    projected = eliminate(cleaned, (hom_var,) + g.vars, budget)
    result = Ideal.make(tring, list(projected.generators) + extra)
    return JelonekIdeal(result, tvars)


@dataclass(frozen=True)
class ProbeSchedule:
    """Deterministic configuration for the sphere-minimum properness probe."""

    radii: tuple[float, ...] = (10.0, 100.0, 1000.0, 10000.0)
    restarts: int = 32
    seed: int = 42
    tol_zero: float = 1e-6
    max_iter: int = 250

    def __post_init__(self):
        if list(self.radii) != sorted(self.radii) or len(set(self.radii)) != len(self.radii):
            raise ValueError("radii must be strictly increasing")
        if self.restarts < 1:
            raise ValueError("need at least one restart")


@dataclass(frozen=True)
class PropernessVerdict:
    value: tuple
    mode: str  # "exact_complex" | "probe_real"
    verdict: str  # "proper" | "non_proper" | "inconclusive"
    evidence: dict


def is_proper_at_complex(
    g: PolyMap,
    c: Sequence[Fraction],
    jelonek: JelonekIdeal | None = None,
    budget: GroebnerBudget = DEFAULT_BUDGET,
) -> PropernessVerdict:
    """Exact certificate: proper iff c misses J(g) and the fiber is finite."""
    cvec = tuple(as_fraction(x) for x in c)

    fiber = Ideal.make(
        g.vars,
        [comp - ci for comp, ci in zip(g.components, cvec)],
    )
    fiber_dim = dimension(fiber, budget)
    evidence: dict = {"fiber_dimension": fiber_dim}
    if fiber_dim > 0:
        # Positive-dimensional fiber: never proper at c, no need for J(g).
        return PropernessVerdict(cvec, "exact_complex", "non_proper", evidence)

    jel = jelonek if jelonek is not None else jelonek_ideal(g, budget)
    values = [gen.eval_exact(list(cvec)) for gen in jel.ideal.generators]
    off_jelonek = any(v != 0 for v in values)
    evidence["jelonek_values"] = [str(v) for v in values]

    return PropernessVerdict(
        cvec, "exact_complex", "proper" if off_jelonek else "non_proper", evidence
    )


# -- float compilation --------------------------------------------------------


class _FloatMap:
    """Plain-float compiled evaluation of a PolyMap and its Jacobian.

    Term lists of (coefficient, [(index, power), ...]) beat numpy for the
    tiny dimensions the probes run at.
    """

    def __init__(self, g: PolyMap):
        self.n = g.n
        self.p = g.p
        self.comp_data = [self._compile(comp) for comp in g.components]
        self.jac_data = [
            [self._compile(comp.partial(j)) for j in range(g.n)]
            for comp in g.components
        ]

    @staticmethod
    def _compile(poly: Polynomial):
        return [
            (float(c), tuple((i, k) for i, k in enumerate(e) if k))
            for e, c in poly.terms
        ]

    @staticmethod
    def _eval_one(data, x) -> float:
        total = 0.0
        for coeff, powers in data:
            term = coeff
            for i, k in powers:
                term *= x[i] ** k
            total += term
        return total

    def value(self, x) -> list[float]:
        return [self._eval_one(d, x) for d in self.comp_data]

    def jacobian(self, x) -> list[list[float]]:
        return [[self._eval_one(d, x) for d in row] for row in self.jac_data]


def _sphere_minimize(
    fmap: _FloatMap,
    c: Sequence[float],
    radius: float,
    rng: np.random.Generator,
    restarts: int,
    max_iter: int,
    stop_below: float = 0.0,
) -> tuple[float, list[float]]:
    """Multi-start projected gradient descent for min |g(x)-c|^2 on |x| = R.

    Backtracking Armijo line search along the sphere tangent, retracted by
    normalization.  Restarts are independent; results merge by minimum.
    """
    from math import isfinite, sqrt

    n = fmap.n
    p = fmap.p
    cvals = [float(v) for v in c]

    def objective(x):
        total = 0.0
        for v, cv in zip(fmap.value(x), cvals):
            r = v - cv
            total += r * r
        return total

    def gradient(x):
        vals = fmap.value(x)
        jac = fmap.jacobian(x)
        grad = [0.0] * n
        for i in range(p):
            ri2 = 2.0 * (vals[i] - cvals[i])
            if ri2 == 0.0:
                continue
            row = jac[i]
            for j in range(n):
                grad[j] += ri2 * row[j]
        return grad

    best_val = float("inf")
    best_x = [float("nan")] * n
    r2 = radius * radius
    for _ in range(restarts):
        u = rng.normal(size=n)
        norm = float(np.linalg.norm(u))
        if norm == 0.0:
            continue
        x = [radius * float(v) / norm for v in u]
        fx = objective(x)
        for _ in range(max_iter):
            grad = gradient(x)
            if not all(isfinite(gv) for gv in grad):
                break
            dot = sum(gv * xv for gv, xv in zip(grad, x)) / r2
            tangent = [gv - dot * xv for gv, xv in zip(grad, x)]
            tnorm = sqrt(sum(tv * tv for tv in tangent))
            if tnorm <= 1e-300 or not isfinite(tnorm):
                break
            alpha = 0.1 * radius / tnorm
            improved = False
            for _ in range(60):
                trial = [xv - alpha * tv for xv, tv in zip(x, tangent)]
                tn = sqrt(sum(tv * tv for tv in trial))
                trial = [radius * tv / tn for tv in trial]
                ft = objective(trial)
                if isfinite(ft) and ft <= fx - 1e-4 * alpha * tnorm * tnorm:
                    x, fx = trial, ft
                    improved = True
                    break
                alpha *= 0.5
            if not improved:
                break
            if fx <= 1e-300:
                break
        if fx < best_val and all(isfinite(xv) for xv in x):
            best_val = fx
            best_x = x
        if best_val <= stop_below:
            break
    if best_val == float("inf"):
        return float("inf"), best_x
    return sqrt(max(best_val, 0.0)), best_x


def properness_probe_real(
    g: PolyMap,
    c: Sequence[float],
    sched: ProbeSchedule = ProbeSchedule(),
    mu_floor: float = 1e-3,
    jelonek: JelonekIdeal | None = None,
    budget: GroebnerBudget = DEFAULT_BUDGET,
    skip_exact: bool = False,
) -> PropernessVerdict:
    """Per-value real properness verdict with full mu(R) evidence.

    mu(R) estimates the minimum of |g(x) - c| over the sphere of radius R.
    Non-properness needs mu at the largest radius below tol_zero and halving
    over the last two steps; properness needs mu bounded below by mu_floor
    and non-decreasing at the end.  A complex-properness certificate wins
    immediately (restricting a proper map to a closed subset stays proper).
    """
    cvec = tuple(float(x) for x in c)

    if not skip_exact:
        # Floats are dyadic rationals, so the conversion is exact and the
        # complex certificate applies to the probed value itself.
        exact = is_proper_at_complex(
            g, [Fraction(x) for x in cvec], jelonek, budget
        )
        if exact.verdict == "proper":
            evidence = dict(exact.evidence)
            evidence["certificate"] = "complex properness restricts to the reals"
            return PropernessVerdict(cvec, "exact_complex", "proper", evidence)

    fmap = _FloatMap(g)
    trace = []
    mus = []
    stop_below = (sched.tol_zero * 1e-3) ** 2
    for k, radius in enumerate(sched.radii):
        rng = np.random.default_rng((sched.seed, k))
        mu, arg = _sphere_minimize(
            fmap, cvec, radius, rng, sched.restarts, sched.max_iter, stop_below
        )
        mus.append(mu)
        trace.append(
            {
                "radius": radius,
                "mu": mu,
                "argmin": [float(v) for v in arg],
            }
        )

    evidence = {"mu_trace": trace, "tol_zero": sched.tol_zero, "mu_floor": mu_floor}
    if not all(np.isfinite(mus)):
        return PropernessVerdict(cvec, "probe_real", "inconclusive", evidence)

    # The sphere keeps meeting the fiber (mu ~ 0 throughout: unbounded fiber)
    # or the minima decay geometrically toward an asymptotic value; either way
    # points escape to infinity with images pinned near c.
    small = [m < sched.tol_zero for m in mus]
    halving_tail = (
        len(mus) >= 3
        and mus[-1] < mus[-2] / 2.0
        and mus[-2] < mus[-3] / 2.0
    )
    if small[-1] and (all(small[1:]) or halving_tail):
        return PropernessVerdict(cvec, "probe_real", "non_proper", evidence)

    bounded_below = all(m >= mu_floor for m in mus)
    nondecreasing_tail = len(mus) >= 2 and mus[-1] >= 0.99 * mus[-2]
    if bounded_below and nondecreasing_tail:
        return PropernessVerdict(cvec, "probe_real", "proper", evidence)

    return PropernessVerdict(cvec, "probe_real", "inconclusive", evidence)


# -- curve probes modeled on escape arcs ---------------------------------------


@dataclass(frozen=True)
class CurveFamily:
    """Polynomial escape curves t -> (t^d, p(t) + eps) in adapted coordinates."""

    d: int
    p_coeffs: tuple[tuple[Fraction, ...], ...] = ()  # per remaining coordinate
    epsilon_box: float = 0.5

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("curve degree must be positive")
        for coeffs in self.p_coeffs:
            if len(coeffs) > self.d:
                raise ValueError("deg p must be at most d - 1")


def tentacle_probe(
    f: PolyMap,
    direction: Sequence[Fraction],
    fam: CurveFamily = CurveFamily(1),
    t_values: Sequence[float] = (10.0, 100.0, 1000.0, 10000.0),
    eps_samples: int = 4,
    seed: int = 42,
) -> dict:
    """Evaluate f along escape curves toward the given direction at infinity.

    Reports whether f stabilizes (is numerically constant) along every sampled
    curve and whether the derivative of f along the escape direction vanishes
    there, as expected near a Lipschitz trivial value.
    """
    v = [as_fraction(x) for x in direction]
    if all(x == 0 for x in v):
        raise ValueError("direction must be nonzero")
    n = f.n

    from .dependence import Subspace

    span = Subspace.from_vectors(n, [v])
    pivot = span.pivot_columns()[0]
    columns = [list(v)]
    for j in range(n):
        if j != pivot:
            columns.append([Fraction(int(i == j)) for i in range(n)])
    frame = LinearMap.from_columns(columns)

    deriv = f.directional_derivative(v)
    rng = np.random.default_rng(seed)
    eps_list = [np.zeros(n - 1)]
    for _ in range(max(eps_samples - 1, 0)):
        eps_list.append(rng.uniform(-fam.epsilon_box, fam.epsilon_box, size=n - 1))

    def curve_point(t: float, eps: np.ndarray) -> list[float]:
        local = [t**fam.d]
        for i in range(n - 1):
            coeffs = fam.p_coeffs[i] if i < len(fam.p_coeffs) else ()
            val = 0.0
            for k, ck in enumerate(coeffs):
                val += float(ck) * t**k
            local.append(val + float(eps[i]))
        frame_rows = [[float(x) for x in row] for row in frame.rows]
        return [
            sum(frame_rows[i][j] * local[j] for j in range(n)) for i in range(n)
        ]

    curves = []
    stabilizes = True
    derivative_vanishes = True
    bounded = True
    for eps in eps_list:
        rows = []
        values = []
        for t in t_values:
            x = curve_point(t, eps)
            fx = f.evaluate_float(x)
            dx = deriv.evaluate_float(x)
            values.append(fx)
            rows.append(
                {
                    "t": t,
                    "f": [float(a) for a in fx],
                    "dv_f": [float(a) for a in dx],
                }
            )
            if max(abs(a) for a in dx) > 1e-6 * (1.0 + max(abs(a) for a in fx)):
                derivative_vanishes = False
        last, prev = np.array(values[-1]), np.array(values[-2])
        scale = 1.0 + float(np.max(np.abs(last)))
        if float(np.max(np.abs(last - prev))) > 1e-6 * scale:
            stabilizes = False
        if not np.all(np.isfinite(last)) or np.max(np.abs(last)) > 1e150:
            bounded = False
        curves.append({"eps": [float(e) for e in eps], "samples": rows})

    return {
        "direction": [str(x) for x in v],
        "stabilizes": stabilizes,
        "bounded": bounded,
        "derivative_vanishes": derivative_vanishes,
        "curves": curves,
    }
