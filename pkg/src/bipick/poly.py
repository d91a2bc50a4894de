"""Bivariate complex polynomials, rational inner functions, Blaschke
products, homogenization, and Sylvester resultants.

Polynomials are stored sparsely (exponent pair -> coefficient) with dense
conversion for grid evaluation.  Resultants are computed numerically by
evaluation at scaled roots of unity followed by trigonometric interpolation,
which is stable and simple at the degrees this package targets (<= ~10).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DegenerateInputError, InputError
from .numcore import DEFAULT_TOL, Tolerances

__all__ = [
    "UniPoly",
    "BiPoly",
    "ProjPoly",
    "Blaschke",
    "RationalInner",
    "homogenize",
    "reflect",
    "make_rational_inner",
    "blaschke_to_fraction",
    "graph_poly",
    "sylvester_resultant",
    "coprime",
    "torus_grid",
    "bidisk_grid",
]

# Coefficients below this magnitude are dropped on construction.
COEFF_DROP = 1e-14
# Relative cleanup threshold for interpolated resultant coefficients; tighter
# than COEFF_DROP in absolute terms but safely above the interpolation noise
# floor, so exactly-multiple resultant roots survive as exact monomial powers.
RESULTANT_CLEANUP = 1e-12
# An interpolated resultant whose values never exceed this (relative to the
# natural coefficient-scale product) is treated as identically zero.
RESULTANT_ZERO = 1e-9
# Stability margin for inner-function construction and validation grids.
INNER_MARGIN = 1e-6
TORUS_GRID_N = 128
DISK_GRID_RADII = 8
DISK_GRID_ANGLES = 8
DISK_GRID_SCALE = 0.999


def _is_finite_complex(c: complex) -> bool:
    return math.isfinite(c.real) and math.isfinite(c.imag)


class UniPoly:
    """Univariate polynomial, ascending coefficients, normalized leading term.

    The zero polynomial is the empty coefficient vector.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        arr = np.asarray(list(coeffs), dtype=np.complex128)
        if arr.size and not np.all(np.isfinite(arr.real) & np.isfinite(arr.imag)):
            raise InputError("UniPoly coefficients must be finite")
        k = arr.size
        while k > 0 and arr[k - 1] == 0.0:
            k -= 1
        self.coeffs = arr[:k].copy()
        self.coeffs.flags.writeable = False

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def one(cls) -> "UniPoly":
        return cls((1.0,))

    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.coeffs.size - 1

    def __call__(self, z):
        if self.is_zero():
            return np.zeros_like(np.asarray(z, dtype=np.complex128)) if np.ndim(z) else 0j
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            if self.is_zero() or other.is_zero():
                return UniPoly.zero()
            return UniPoly(np.convolve(self.coeffs, other.coeffs))
        return UniPoly(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(a.size, b.size)
        out = np.zeros(n, dtype=np.complex128)
        out[: a.size] += a
        out[: b.size] += b
        return UniPoly(out)

    def __sub__(self, other):
        return self + (other * (-1.0))

    def __eq__(self, other):
        return isinstance(other, UniPoly) and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"UniPoly({self.coeffs.tolist()})"


class BiPoly:
    """Sparse bivariate polynomial over the complex numbers.

    Terms map exponent pairs (i, j) to coefficients; coefficients below
    COEFF_DROP in magnitude are discarded at construction.
    """

    __slots__ = ("_terms", "_bidegree")

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[tuple[int, int], complex] = {}
        for key, c in items:
            i, j = int(key[0]), int(key[1])
            if i < 0 or j < 0:
                raise InputError("exponents must be nonnegative")
            c = complex(c)
            if not _is_finite_complex(c):
                raise InputError("BiPoly coefficients must be finite")
            acc[(i, j)] = acc.get((i, j), 0j) + c
        self._terms = {k: v for k, v in sorted(acc.items()) if abs(v) >= COEFF_DROP}
        if self._terms:
            self._bidegree = (
                max(i for i, _ in self._terms),
                max(j for _, j in self._terms),
            )
        else:
            self._bidegree = (0, 0)

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1.0) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def from_unipoly(cls, u: UniPoly, var: int = 1) -> "BiPoly":
        if var not in (1, 2):
            raise InputError("var must be 1 or 2")
        if var == 1:
            return cls({(k, 0): c for k, c in enumerate(u.coeffs)})
        return cls({(0, k): c for k, c in enumerate(u.coeffs)})

    @property
    def terms(self) -> dict[tuple[int, int], complex]:
        return dict(self._terms)

    @property
    def bidegree(self) -> tuple[int, int]:
        return self._bidegree

    def degree(self, var: int) -> int:
        if var not in (1, 2):
            raise InputError("var must be 1 or 2")
        return self._bidegree[var - 1]

    def total_degree(self) -> int:
        if not self._terms:
            return 0
        return max(i + j for i, j in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def max_coeff(self) -> float:
        if not self._terms:
            return 0.0
        return max(abs(c) for c in self._terms.values())

    def to_dense(self) -> np.ndarray:
        """Coefficient matrix C with C[i, j] multiplying z1^i z2^j."""
        n1, n2 = self._bidegree
        dense = np.zeros((n1 + 1, n2 + 1), dtype=np.complex128)
        for (i, j), c in self._terms.items():
            dense[i, j] = c
        return dense

    def __call__(self, z1, z2):
        if not self._terms:
            z = np.asarray(z1)
            return np.zeros(z.shape, dtype=np.complex128) if z.ndim else 0j
        val = np.polynomial.polynomial.polyval2d(
            np.asarray(z1, dtype=np.complex128),
            np.asarray(z2, dtype=np.complex128),
            self.to_dense(),
        )
        return val if np.ndim(val) else complex(val)

    def __add__(self, other):
        items = list(self._terms.items()) + list(other._terms.items())
        return BiPoly(items)

    def __sub__(self, other):
        items = list(self._terms.items()) + [(k, -c) for k, c in other._terms.items()]
        return BiPoly(items)

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            items = []
            for (i1, j1), c1 in self._terms.items():
                for (i2, j2), c2 in other._terms.items():
                    items.append(((i1 + i2, j1 + j2), c1 * c2))
            return BiPoly(items)
        c = complex(other)
        return BiPoly([(k, v * c) for k, v in self._terms.items()])

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1.0)

    def conj_coeffs(self) -> "BiPoly":
        return BiPoly({k: np.conj(c) for k, c in self._terms.items()})

    def shear(self, t: complex) -> "BiPoly":
        """Substitution z1 -> z1 + t*z2, leaving z2 fixed."""
        t = complex(t)
        items = []
        for (i, j), c in self._terms.items():
            for k in range(i + 1):
                items.append(((k, j + i - k), c * math.comb(i, k) * t ** (i - k)))
        return BiPoly(items)

    def coeff_in_var(self, var: int) -> list["UniPoly"]:
        """Coefficients of this polynomial viewed in `var`, each a UniPoly
        in the other variable, ascending by the `var` exponent."""
        d = self.degree(var)
        rows: list[dict[int, complex]] = [dict() for _ in range(d + 1)]
        for (i, j), c in self._terms.items():
            if var == 1:
                rows[i][j] = c
            else:
                rows[j][i] = c
        out = []
        for row in rows:
            n = max(row) + 1 if row else 0
            coeffs = np.zeros(n, dtype=np.complex128)
            for k, c in row.items():
                coeffs[k] = c
            out.append(UniPoly(coeffs))
        return out

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self._terms == other._terms

    def __repr__(self):
        return f"BiPoly({self._terms!r})"


class ProjPoly:
    """Homogeneous polynomial in (X, Y, Z); every exponent triple sums to
    the declared degree."""

    __slots__ = ("_terms", "degree")

    def __init__(self, terms, degree: int | None = None):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[tuple[int, int, int], complex] = {}
        for key, c in items:
            a, b, cc = int(key[0]), int(key[1]), int(key[2])
            if min(a, b, cc) < 0:
                raise InputError("exponents must be nonnegative")
            acc[(a, b, cc)] = acc.get((a, b, cc), 0j) + complex(c)
        terms_clean = {k: v for k, v in sorted(acc.items()) if abs(v) >= COEFF_DROP}
        if not terms_clean:
            raise InputError("ProjPoly cannot be the zero polynomial")
        degrees = {sum(k) for k in terms_clean}
        if len(degrees) != 1:
            raise InputError("ProjPoly terms must share one total degree")
        d = degrees.pop()
        if degree is not None and degree != d:
            raise InputError("declared degree does not match the terms")
        object.__setattr__(self, "_terms", terms_clean)
        object.__setattr__(self, "degree", d)

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoly is immutable")

    @property
    def terms(self):
        return dict(self._terms)

    def dehomogenize(self, at: str = "z") -> BiPoly:
        """Set the named coordinate to 1; remaining pair keeps (x, y) order,
        so at='x' yields a polynomial in (Y, Z) and at='y' one in (X, Z)."""
        idx = {"x": 0, "y": 1, "z": 2}[at]
        keep = [k for k in range(3) if k != idx]
        return BiPoly(
            [((key[keep[0]], key[keep[1]]), c) for key, c in self._terms.items()]
        )

    def restrict_to_infinity(self) -> BiPoly:
        """The binary form P(X, Y, 0), returned as a BiPoly in (X, Y)."""
        return BiPoly(
            [((a, b), c) for (a, b, cc), c in self._terms.items() if cc == 0]
        )

    def __eq__(self, other):
        return isinstance(other, ProjPoly) and self._terms == other._terms

    def __repr__(self):
        return f"ProjPoly(degree={self.degree}, {self._terms!r})"


def homogenize(p: BiPoly) -> ProjPoly:
    """Homogenize to total degree: P(X, Y, Z) = Z^n p(X/Z, Y/Z)."""
    if p.is_zero():
        raise DegenerateInputError("cannot homogenize the zero polynomial")
    n = p.total_degree()
    return ProjPoly({(i, j, n - i - j): c for (i, j), c in p.terms.items()}, degree=n)


def reflect(p: BiPoly) -> BiPoly:
    """Reflection across the torus: conjugate coefficients, flip exponents
    within the bidegree box.  For p nonvanishing on the closed bidisk,
    reflect(p)/p has unit modulus on the torus."""
    if p.is_zero():
        raise DegenerateInputError("cannot reflect the zero polynomial")
    n1, n2 = p.bidegree
    return BiPoly({(n1 - i, n2 - j): np.conj(c) for (i, j), c in p.terms.items()})


# ---------------------------------------------------------------------------
# evaluation grids
# ---------------------------------------------------------------------------

def torus_grid(n: int = TORUS_GRID_N):
    """Meshgrid pair covering the 2-torus with n x n points."""
    ang = np.exp(2j * np.pi * np.arange(n) / n)
    return np.meshgrid(ang, ang, indexing="ij")

def _disk_samples() -> np.ndarray:
    # radius 0 is included so zeros at the disk center are caught
    radii = DISK_GRID_SCALE * (np.arange(DISK_GRID_RADII) / (DISK_GRID_RADII - 1))
    ang = np.exp(2j * np.pi * np.arange(DISK_GRID_ANGLES) / DISK_GRID_ANGLES)
    return (radii[:, None] * ang[None, :]).ravel()


def bidisk_grid():
    """Meshgrid pair of 64 x 64 sample points of the closed bidisk scaled
    by 0.999 (8 radii times 8 angles per variable)."""
    pts = _disk_samples()
    return np.meshgrid(pts, pts, indexing="ij")


# ---------------------------------------------------------------------------
# Blaschke products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Blaschke:
    """Finite Blaschke product: unimodular constant times disk-automorphism
    factors (z - a_k) / (1 - conj(a_k) z)."""

    unimodular: complex = 1.0 + 0j
    zeros: tuple[complex, ...] = field(default_factory=tuple)

    def __post_init__(self):
        u = complex(self.unimodular)
        if abs(abs(u) - 1.0) > 1e-12:
            raise InputError("Blaschke constant must be unimodular")
        zs = tuple(complex(a) for a in self.zeros)
        if any(abs(a) >= 1.0 for a in zs):
            raise InputError("Blaschke zeros must lie in the open unit disk")
        object.__setattr__(self, "unimodular", u)
        object.__setattr__(self, "zeros", zs)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=np.complex128)
        out = np.full(lam.shape, self.unimodular, dtype=np.complex128)
        for a in self.zeros:
            out = out * (lam - a) / (1.0 - np.conj(a) * lam)
        return out if out.ndim else complex(out)


def blaschke_to_fraction(m: Blaschke) -> tuple[UniPoly, UniPoly]:
    """Numerator and denominator polynomials with q/r = m pointwise."""
    q = np.array([m.unimodular], dtype=np.complex128)
    r = np.array([1.0 + 0j])
    for a in m.zeros:
        q = np.convolve(q, np.array([-a, 1.0]))
        r = np.convolve(r, np.array([1.0, -np.conj(a)]))
    return UniPoly(q), UniPoly(r)


def graph_poly(m: Blaschke) -> BiPoly:
    """The curve z2 * r(z1) - q(z1) whose bidisk zero set is the graph of m."""
    q, r = blaschke_to_fraction(m)
    items = [((k, 1), c) for k, c in enumerate(r.coeffs)]
    items += [((k, 0), -c) for k, c in enumerate(q.coeffs)]
    return BiPoly(items)


# ---------------------------------------------------------------------------
# rational inner functions
# ---------------------------------------------------------------------------

class RationalInner:
    """Ratio of coprime bivariate polynomials with unit modulus on the torus.

    Construction validates: the denominator stays away from zero on a sampled
    closed bidisk, numerator and denominator are coprime, and |f| is within
    1e-6 of 1 on a 128 x 128 torus grid.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: BiPoly, denominator: BiPoly):
        if numerator.is_zero() or denominator.is_zero():
            raise InputError("rational inner functions need nonzero numerator "
                             "and denominator")
        z1, z2 = bidisk_grid()
        den_vals = denominator(z1, z2)
        if np.min(np.abs(den_vals)) <= INNER_MARGIN:
            raise InputError("denominator vanishes on or near the closed bidisk")
        if numerator.total_degree() > 0 and denominator.total_degree() > 0:
            if not coprime(numerator, denominator):
                raise InputError("numerator and denominator share a factor")
        t1, t2 = torus_grid(TORUS_GRID_N)
        mod = np.abs(numerator(t1, t2) / denominator(t1, t2))
        if np.max(np.abs(mod - 1.0)) > INNER_MARGIN:
            raise InputError("modulus is not 1 on the torus; not inner")
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("RationalInner is immutable")

    @property
    def bidegree(self) -> tuple[int, int]:
        return self.numerator.bidegree

    def __call__(self, z1, z2):
        return self.numerator(z1, z2) / self.denominator(z1, z2)

    def depends_only_on_z1(self) -> bool:
        return self.numerator.degree(2) == 0 and self.denominator.degree(2) == 0

    def __repr__(self):
        return f"RationalInner(bidegree={self.bidegree})"


def make_rational_inner(p: BiPoly) -> RationalInner:
    """Build reflect(p)/p for a polynomial with no zeros on the closed bidisk.

    Stability is certified numerically: |p| must exceed 1e-6 on the torus
    grid and on the interior grid.
    """
    if p.is_zero():
        raise DegenerateInputError("zero polynomial")
    t1, t2 = torus_grid(TORUS_GRID_N)
    if np.min(np.abs(p(t1, t2))) <= INNER_MARGIN:
        raise DegenerateInputError("polynomial vanishes on or near the torus")
    z1, z2 = bidisk_grid()
    if np.min(np.abs(p(z1, z2))) <= INNER_MARGIN:
        raise DegenerateInputError("polynomial vanishes on or near the bidisk")
    return RationalInner(reflect(p), p)


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def sylvester_resultant(p: BiPoly, q: BiPoly, eliminate: int = 2) -> UniPoly:
    """Resultant eliminating one variable, as a polynomial in the other.

    Computed by evaluating per-point Sylvester determinants at scaled roots
    of unity (radius 1.1) and interpolating.  An identically zero result
    signals a common factor involving the eliminated variable.
    """
    if eliminate not in (1, 2):
        raise InputError("eliminate must be 1 or 2")
    dv = p.degree(eliminate)
    dw = q.degree(eliminate)
    if dv < 1 or dw < 1:
        raise DegenerateInputError(
            "both polynomials need positive degree in the eliminated variable"
        )
    remaining = 2 if eliminate == 1 else 1
    bound = (
        p.degree(1) * q.degree(2)
        + p.degree(2) * q.degree(1)
        + p.degree(remaining)
        + q.degree(remaining)
    )
    m = bound + 1
    radius = 1.1
    xs = radius * np.exp(2j * np.pi * np.arange(m) / m)

    def _coeff_values(poly: BiPoly, d_elim: int) -> np.ndarray:
        cols = poly.coeff_in_var(eliminate)
        vals = np.zeros((m, d_elim + 1), dtype=np.complex128)
        for j, u in enumerate(cols):
            if not u.is_zero():
                vals[:, j] = u(xs)
        return vals

    pv = _coeff_values(p, dv)
    qv = _coeff_values(q, dw)
    s = dv + dw
    mats = np.zeros((m, s, s), dtype=np.complex128)
    p_desc = pv[:, ::-1]
    q_desc = qv[:, ::-1]
    for i in range(dw):
        mats[:, i, i : i + dv + 1] = p_desc
    for i in range(dv):
        mats[:, dw + i, i : i + dw + 1] = q_desc
    dets = np.asarray(_kernels.det_batch(np.ascontiguousarray(mats)))
    scale = (max(p.max_coeff(), 1e-300) ** dw) * (max(q.max_coeff(), 1e-300) ** dv)
    if np.max(np.abs(dets)) <= RESULTANT_ZERO * scale:
        return UniPoly.zero()
    coeffs = np.fft.fft(dets) / m / radius ** np.arange(m)
    mx = float(np.max(np.abs(coeffs)))
    coeffs = np.where(np.abs(coeffs) > RESULTANT_CLEANUP * mx, coeffs, 0.0)
    return UniPoly(coeffs)


def coprime(p: BiPoly, q: BiPoly) -> bool:
    """True when p and q share no nonconstant factor.

    Every elimination order in which both polynomials have positive degree
    must yield a nonzero resultant; a factor involving only one variable is
    invisible to the other order, so a single nonzero resultant is not
    sufficient evidence.
    """
    if p.is_zero() or q.is_zero():
        other = q if p.is_zero() else p
        return not other.is_zero() and other.total_degree() == 0
    if p.total_degree() == 0 or q.total_degree() == 0:
        return True
    for var in (2, 1):
        if p.degree(var) >= 1 and q.degree(var) >= 1:
            if sylvester_resultant(p, q, eliminate=var).is_zero():
                return False
    return True
