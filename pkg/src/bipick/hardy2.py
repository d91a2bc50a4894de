"""Hardy-space coefficient inner products on the bidisk and the strong-Pick
certificates built from them.

The coefficient inner product <f, g> = sum a_ij conj(b_ij) is exact integer
bookkeeping on exponents; the torus-grid forms exist to cross-check it and to
measure rational inner functions, whose coefficient expansion is infinite.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InputError, PreconditionError
from .poly import BiPoly, RationalInner, torus_grid

__all__ = [
    "h2_inner",
    "h2_norm_sq",
    "torus_integral_inner",
    "torus_integral_norm",
    "hs_condition_sample",
    "monomial_certificate",
    "MonomialVerdict",
    "MonomialCertificate",
    "HsSampleReport",
    "orthogonality_check",
    "random_h2_poly",
]


def h2_inner(f: BiPoly, g: BiPoly) -> complex:
    """Coefficient inner product, linear in the first argument."""
    small, large = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    lt = large.terms
    total = 0j
    for key, c in small.terms.items():
        other = lt.get(key)
        if other is not None:
            if small is f:
                total += c * np.conj(other)
            else:
                total += other * np.conj(c)
    return complex(total)


def h2_norm_sq(f: BiPoly) -> float:
    return sum(abs(c) ** 2 for c in f.terms.values())


def torus_integral_inner(f, g, grid_n: int = 128) -> complex:
    """Sesquilinear grid form (1/n^2) sum f conj(g) over the torus grid.

    Exact for polynomial pairs whose bidegrees stay below the grid order.
    """
    if grid_n < 64:
        raise InputError("grid_n must be at least 64")
    z1, z2 = torus_grid(grid_n)
    return complex(np.mean(f(z1, z2) * np.conj(g(z1, z2))))


def torus_integral_norm(f, grid_n: int = 128) -> float:
    """Grid approximation of the squared torus L2 norm.

    Accepts a BiPoly or a RationalInner; inner functions return 1 up to the
    construction margin.
    """
    if grid_n < 64:
        raise InputError("grid_n must be at least 64")
    z1, z2 = torus_grid(grid_n)
    vals = f(z1, z2)
    return float(np.mean(np.abs(vals) ** 2))


class MonomialVerdict(Enum):
    CERTIFIED = "CERTIFIED"
    FAIL = "FAIL"


@dataclass(frozen=True)
class MonomialCertificate:
    verdict: MonomialVerdict
    f_degrees: tuple[int, int]
    offending: tuple[tuple[int, int], ...]


def _single_monomial(f: BiPoly) -> tuple[int, int]:
    terms = f.terms
    if len(terms) != 1:
        raise PreconditionError("f must be a single monomial")
    return next(iter(terms))


def monomial_certificate(f: BiPoly, p: BiPoly) -> MonomialCertificate:
    """Exponent test: every monomial of p must exceed f's degree in z1 or z2.

    CERTIFIED makes the zero curve of p a strong Pick set for the monomial f;
    the check is exact integer arithmetic on exponents.
    """
    d1, d2 = _single_monomial(f)
    offending = tuple(
        (i, j) for (i, j) in sorted(p.terms) if not (d1 < i or d2 < j)
    )
    verdict = MonomialVerdict.CERTIFIED if not offending else MonomialVerdict.FAIL
    return MonomialCertificate(verdict, (d1, d2), offending)


def orthogonality_check(f: BiPoly, p: BiPoly, g: BiPoly) -> float:
    """|<f, p g>| for a certified monomial f; exact coefficient cancellation
    keeps this at zero for every polynomial g."""
    cert = monomial_certificate(f, p)
    if cert.verdict is not MonomialVerdict.CERTIFIED:
        raise PreconditionError("orthogonality check requires a certified pair")
    return abs(h2_inner(f, p * g))


@dataclass(frozen=True)
class HsSampleRow:
    lhs: float
    rhs: float
    strict: bool
    degenerate: bool


@dataclass(frozen=True)
class HsSampleReport:
    """Sampled evidence for the strict inequality 2 Re<f, pg> < ||pg||_2^2.

    Sampling cannot prove the universally quantified hypothesis, so the
    summary is SUPPORTED or VIOLATED, never proven.
    """

    rows: tuple[HsSampleRow, ...]
    verdict: str

    @property
    def supported(self) -> bool:
        return self.verdict == "SUPPORTED"


def hs_condition_sample(f, p: BiPoly, gs) -> HsSampleReport:
    """Evaluate (2 Re<f, pg>, ||pg||_2^2) for each supplied g.

    f may be a BiPoly or a RationalInner whose numerator is polynomial and
    denominator constant in the sampled inner product; zero g rows are marked
    degenerate and excluded from the verdict.
    """
    if isinstance(f, RationalInner):
        den = f.denominator
        if den.total_degree() != 0:
            raise InputError("sampling needs a polynomial f")
        fp = f.numerator * (1.0 / den.terms[(0, 0)])
    else:
        fp = f
    if fp.total_degree() == 0:
        raise PreconditionError("f must be nonconstant")
    rows = []
    violated = False
    for g in gs:
        pg = p * g
        lhs = 2.0 * h2_inner(fp, pg).real
        rhs = h2_norm_sq(pg)
        degenerate = g.is_zero()
        strict = lhs < rhs
        if not degenerate and not strict:
            violated = True
        rows.append(HsSampleRow(lhs, rhs, strict, degenerate))
    return HsSampleReport(tuple(rows), "VIOLATED" if violated else "SUPPORTED")


def random_h2_poly(rng: np.random.Generator, max_bidegree=(4, 4)) -> BiPoly:
    """Random test polynomial: coefficients uniform on the complex unit disk."""
    n1, n2 = max_bidegree
    items = []
    for i in range(n1 + 1):
        for j in range(n2 + 1):
            r = np.sqrt(rng.uniform())
            theta = rng.uniform(0.0, 2.0 * np.pi)
            items.append(((i, j), r * np.exp(1j * theta)))
    return BiPoly(items)
