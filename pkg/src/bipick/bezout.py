"""Intersection counting for plane curves attached to rational inner functions.

Finite intersections are located through a generic complex shear followed by
a resultant: after the shear the eliminated variable has constant leading
coefficient, so the resultant degree counts exactly the finite intersections
and its root multiplicities are the local intersection numbers.  Points at
infinity are counted in the swapped projective charts with the same
machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CommonFactorError,
    DegenerateInputError,
    InputError,
    NumericalFailureError,
)
from .numcore import DEFAULT_TOL, Tolerances, poly_roots, poly_roots_clustered
from .poly import BiPoly, ProjPoly, RationalInner, coprime, homogenize, sylvester_resultant
from .rng import STREAM_SHEAR, rng_for

__all__ = [
    "IntersectionReport",
    "BoundCheckReport",
    "VarietyZeroReport",
    "bezout_total",
    "inner_infinity_count",
    "finite_common_zeros",
    "infinity_intersections",
    "intersection_report",
    "common_zero_bound_check",
    "zeros_on_variety",
]

POINT_RESIDUAL = 1e-6
MATCH_TOL = 1e-6
INFINITY_COORD_TOL = 1e-6
BOUNDARY_FLAG_MARGIN = 1e-6
SHEAR_RETRIES = 5


@dataclass(frozen=True)
class IntersectionReport:
    """Projective intersection accounting for a coprime curve pair."""

    total: int
    at_infinity: int
    finite_points: tuple[tuple[tuple[complex, complex], int], ...]
    finite_total: int = field(init=False)

    def __post_init__(self):
        ft = sum(m for _, m in self.finite_points)
        object.__setattr__(self, "finite_total", ft)
        if ft + self.at_infinity > self.total:
            raise NumericalFailureError(
                "intersection count exceeds the degree product"
            )


@dataclass(frozen=True)
class BoundCheckReport:
    bidegree_f: tuple[int, int]
    bidegree_g: tuple[int, int]
    bound: int
    finite_total: int
    at_infinity: int
    total: int
    finite_points: tuple[tuple[tuple[complex, complex], int], ...]


@dataclass(frozen=True)
class VarietyZeroReport:
    count: int
    formula_count: int
    matches_formula: bool
    points: tuple[tuple[tuple[complex, complex], int], ...]
    boundary_flagged: tuple[tuple[complex, complex], ...]


def bezout_total(p_proj: ProjPoly, q_proj: ProjPoly) -> int:
    """Degree product; valid as the full intersection count for coprime curves."""
    if not coprime(p_proj.dehomogenize("z"), q_proj.dehomogenize("z")):
        raise CommonFactorError("curves share a component")
    return p_proj.degree * q_proj.degree


def inner_infinity_count(q: BiPoly, r: BiPoly) -> int:
    """d1*e1 + d2*e2 for numerators carrying the top corner monomial.

    Numerators of rational inner functions always do; the check guards
    against accidental use on other polynomials.
    """
    d1, d2 = q.bidegree
    e1, e2 = r.bidegree
    if (d1, d2) != (0, 0) and (d1, d2) not in q.terms:
        raise DegenerateInputError("first numerator lacks its top corner monomial")
    if (e1, e2) != (0, 0) and (e1, e2) not in r.terms:
        raise DegenerateInputError("second numerator lacks its top corner monomial")
    return d1 * e1 + d2 * e2


def _eval_scale(p: BiPoly, x: complex, y: complex) -> float:
    n1, n2 = p.bidegree
    s = sum(abs(c) for c in p.terms.values())
    return max(1.0, s * max(1.0, abs(x)) ** n1 * max(1.0, abs(y)) ** n2)


def _fiber_coeffs(ps: BiPoly, u0: complex) -> np.ndarray:
    cols = ps.coeff_in_var(2)
    return np.asarray([0j if c.is_zero() else complex(c(u0)) for c in cols])


def _try_shear(p: BiPoly, q: BiPoly, t: complex, tol: Tolerances):
    ps = p.shear(t)
    qs = q.shear(t)
    # The substitution z1 -> z1 + t z2 lifts every total-degree-d term to
    # z2-degree d with a constant coefficient; a tiny constant means the
    # drawn direction is unluckily close to an asymptotic direction.
    for orig, sheared in ((p, ps), (q, qs)):
        d = orig.total_degree()
        lead = sheared.terms.get((0, d), 0j)
        if abs(lead) <= 1e-8 * max(sheared.max_coeff(), 1e-300):
            return None
    res = sylvester_resultant(ps, qs, eliminate=2)
    if res.is_zero():
        raise CommonFactorError("vanishing resultant; curves share a component")
    if res.degree == 0:
        return []
    points = []
    for u0, mult in poly_roots_clustered(res.coeffs, tol):
        pf = _fiber_coeffs(ps, u0)
        qf = _fiber_coeffs(qs, u0)
        rp = poly_roots(pf, tol) if len(pf) > 1 else np.zeros(0, complex)
        rq = poly_roots(qf, tol) if len(qf) > 1 else np.zeros(0, complex)
        common = [
            a
            for a in rp
            if rq.size and np.min(np.abs(rq - a)) <= MATCH_TOL * (1.0 + abs(a))
        ]
        if not common:
            return None
        reps: list[complex] = []
        for a in common:
            if all(abs(a - b) > MATCH_TOL * (1.0 + abs(a)) for b in reps):
                reps.append(a)
        if len(reps) != 1:
            return None
        v0 = reps[0]
        x0 = u0 + t * v0
        y0 = v0
        if abs(p(x0, y0)) > POINT_RESIDUAL * _eval_scale(p, x0, y0):
            return None
        if abs(q(x0, y0)) > POINT_RESIDUAL * _eval_scale(q, x0, y0):
            return None
        points.append(((complex(x0), complex(y0)), mult))
    return points


def finite_common_zeros(
    p: BiPoly, q: BiPoly, tol: Tolerances = DEFAULT_TOL, seed: int = 0
) -> list[tuple[tuple[complex, complex], int]]:
    """Common affine zeros with intersection multiplicities.

    A seeded random shear puts the pair in good position; the draw is retried
    when a fiber turns out ambiguous (two intersection points sharing a
    sheared first coordinate) or a residual check fails.
    """
    if p.is_zero() or q.is_zero():
        raise InputError("cannot intersect the zero polynomial")
    if p.total_degree() == 0 or q.total_degree() == 0:
        return []
    if not coprime(p, q):
        raise CommonFactorError("polynomials share a factor")
    rng = rng_for(seed, STREAM_SHEAR)
    for _ in range(SHEAR_RETRIES):
        t = (0.35 + 0.55 * rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        result = _try_shear(p, q, complex(t), tol)
        if result is not None:
            return result
    raise NumericalFailureError("shear retries exhausted")


def infinity_intersections(
    p: BiPoly, q: BiPoly, tol: Tolerances = DEFAULT_TOL, seed: int = 0
) -> list[tuple[tuple[complex, complex, complex], int]]:
    """Intersections on the line at infinity with multiplicities.

    Computed in the swapped charts X=1 (points [1 : y : 0]) and Y=1 (only the
    point [0 : 1 : 0]), reusing the affine machinery and keeping the zeros of
    the chart's Z coordinate.
    """
    pp = homogenize(p)
    qp = homogenize(q)
    out: list[tuple[tuple[complex, complex, complex], int]] = []
    pb = pp.dehomogenize("x")
    qb = qp.dehomogenize("x")
    if pb.total_degree() > 0 and qb.total_degree() > 0:
        for (y0, z0), mult in finite_common_zeros(pb, qb, tol, seed):
            if abs(z0) <= INFINITY_COORD_TOL:
                out.append(((1.0 + 0j, y0, 0j), mult))
    top_p = pp.restrict_to_infinity()
    top_q = qp.restrict_to_infinity()
    p_through = all(i >= 1 for i, _ in top_p.terms)
    q_through = all(i >= 1 for i, _ in top_q.terms)
    if p_through and q_through:
        pc = pp.dehomogenize("y")
        qc = qp.dehomogenize("y")
        if pc.total_degree() > 0 and qc.total_degree() > 0:
            for (x0, z0), mult in finite_common_zeros(pc, qc, tol, seed):
                if abs(x0) <= INFINITY_COORD_TOL and abs(z0) <= INFINITY_COORD_TOL:
                    out.append(((0j, 1.0 + 0j, 0j), mult))
    return out


def intersection_report(
    p: BiPoly, q: BiPoly, tol: Tolerances = DEFAULT_TOL, seed: int = 0
) -> IntersectionReport:
    """Full projective accounting: finite points, infinity total, degree product."""
    total = bezout_total(homogenize(p), homogenize(q))
    finite = finite_common_zeros(p, q, tol, seed)
    at_inf = sum(m for _, m in infinity_intersections(p, q, tol, seed))
    return IntersectionReport(
        total=total, at_infinity=at_inf, finite_points=tuple(finite)
    )


def common_zero_bound_check(
    f: RationalInner,
    g: RationalInner,
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 0,
) -> BoundCheckReport:
    """Count common numerator zeros and check them against d1*e2 + d2*e1.

    A violated bound is mathematically impossible for coprime inner
    numerators, so it is raised as a numerical failure rather than reported.
    """
    qf = f.numerator
    qg = g.numerator
    if not coprime(qf, qg):
        raise CommonFactorError("numerators share a factor")
    d1, d2 = f.bidegree
    e1, e2 = g.bidegree
    finite = finite_common_zeros(qf, qg, tol, seed)
    finite_total = sum(m for _, m in finite)
    bound = d1 * e2 + d2 * e1
    at_inf = inner_infinity_count(qf, qg)
    total = (d1 + d2) * (e1 + e2)
    if finite_total > bound:
        raise NumericalFailureError(
            f"finite intersection count {finite_total} exceeds the bound {bound}"
        )
    if finite_total + at_inf > total:
        raise NumericalFailureError(
            "finite plus infinity count exceeds the degree product"
        )
    return BoundCheckReport(
        bidegree_f=(d1, d2),
        bidegree_g=(e1, e2),
        bound=bound,
        finite_total=finite_total,
        at_infinity=at_inf,
        total=total,
        finite_points=tuple(finite),
    )


def zeros_on_variety(
    f: RationalInner,
    p: BiPoly,
    domain: str = "BIDISK",
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 0,
) -> VarietyZeroReport:
    """Zeros of f on the curve of p, counted with multiplicity.

    domain BIDISK keeps strictly interior points and separately flags points
    within 1e-6 of the boundary; domain ALL keeps every affine point.  The
    d1*n2 + d2*n1 comparison is advisory and only meaningful for curves that
    exit through the torus.
    """
    if domain not in ("BIDISK", "ALL"):
        raise InputError("domain must be BIDISK or ALL")
    qf = f.numerator
    if not coprime(qf, p):
        raise CommonFactorError("numerator of f shares a factor with p")
    pts = finite_common_zeros(qf, p, tol, seed)
    kept = []
    flagged = []
    for (x0, y0), mult in pts:
        r = max(abs(x0), abs(y0))
        if domain == "ALL":
            kept.append(((x0, y0), mult))
            continue
        if abs(r - 1.0) <= BOUNDARY_FLAG_MARGIN:
            flagged.append((x0, y0))
        if r < 1.0:
            kept.append(((x0, y0), mult))
    count = sum(m for _, m in kept)
    d1, d2 = f.bidegree
    n1, n2 = p.bidegree
    formula = d1 * n2 + d2 * n1
    return VarietyZeroReport(
        count=count,
        formula_count=formula,
        matches_formula=count == formula,
        points=tuple(kept),
        boundary_flagged=tuple(flagged),
    )
