"""Deterministic complex linear algebra and univariate root finding.

Everything here is a pure function of its inputs.  Matrices are small (the
package targets interpolation problems with at most a few dozen nodes), so
the eigensolver is a cyclic complex Jacobi sweep: deterministic, accurate at
this scale, and independent of LAPACK ordering choices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import ConvergenceError, InputError, PreconditionError

__all__ = [
    "Tolerances",
    "PsdStatus",
    "PsdResult",
    "HermitianMatrix",
    "EigenDecomposition",
    "herm_eigen",
    "psd_status",
    "numeric_rank",
    "null_vector",
    "schur_product",
    "entrywise_quotient",
    "poly_roots",
    "poly_roots_clustered",
    "complex_null_space",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used throughout the package.

    psd_tol scales the positive/indefinite decision, rank_tol the numeric
    rank, root_tol the polynomial root residual, residual_tol the Agler pair
    reconstruction error.  All thresholds are applied relative to
    max(1, Frobenius scale) of the object under test.
    """

    psd_tol: float = 1e-9
    rank_tol: float = 1e-8
    root_tol: float = 1e-10
    residual_tol: float = 1e-8

    def __post_init__(self):
        for name in ("psd_tol", "rank_tol", "root_tol", "residual_tol"):
            if not getattr(self, name) > 0.0:
                raise InputError(f"{name} must be strictly positive")

    def scaled(self, factor: float) -> "Tolerances":
        return Tolerances(
            psd_tol=self.psd_tol * factor,
            rank_tol=self.rank_tol * factor,
            root_tol=self.root_tol * factor,
            residual_tol=self.residual_tol * factor,
        )


DEFAULT_TOL = Tolerances()


class PsdStatus(Enum):
    PD = "PD"
    PSD_SINGULAR = "PSD_SINGULAR"
    INDEFINITE = "INDEFINITE"


class PsdResult(NamedTuple):
    status: PsdStatus
    lambda_min: float


def _check_finite(arr: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(arr.view(np.float64) if arr.dtype == np.complex128 else arr)):
        raise InputError(f"{what} contains NaN or Inf")


class HermitianMatrix:
    """Dense complex Hermitian matrix.

    Hermitian symmetry is enforced at construction by averaging with the
    conjugate transpose, so floating-point asymmetry from builders cannot
    leak into eigenvalue computations.
    """

    __slots__ = ("mat",)

    def __init__(self, entries):
        arr = np.asarray(entries, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InputError("HermitianMatrix requires a square 2-D array")
        if arr.shape[0] < 1:
            raise InputError("HermitianMatrix requires positive dimension")
        _check_finite(arr, "HermitianMatrix")
        mat = (arr + arr.conj().T) * 0.5
        mat.flags.writeable = False
        object.__setattr__(self, "mat", mat)

    def __setattr__(self, name, value):
        raise AttributeError("HermitianMatrix is immutable")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.mat))

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.mat.copy() if copy else self.mat
        return self.mat.astype(dtype)

    def __repr__(self):
        return f"HermitianMatrix(dim={self.dim})"


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues ascending with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_matrix(h) -> np.ndarray:
    if isinstance(h, HermitianMatrix):
        return h.mat
    return HermitianMatrix(h).mat


def herm_eigen(h) -> EigenDecomposition:
    """Eigendecomposition by cyclic Jacobi, deterministic for fixed input.

    Raises ConvergenceError after the rotation budget 100 * N^2, which only
    triggers on ill-posed input (non-finite entries are rejected earlier).
    """
    mat = _as_matrix(h)
    n = mat.shape[0]
    diag, vec, converged = _kernels.jacobi_hermitian(mat, 100 * n * n)
    if not converged:
        raise ConvergenceError("Jacobi sweep exhausted its rotation budget")
    order = np.argsort(diag, kind="stable")
    w = diag[order]
    v = vec[:, order]
    # Fix each column's phase (largest component real positive) so repeated
    # runs and both backends agree up to rounding.
    for j in range(n):
        k = int(np.argmax(np.abs(v[:, j])))
        piv = v[k, j]
        apiv = abs(piv)
        if apiv > 0.0:
            v[:, j] *= np.conj(piv) / apiv
    w.flags.writeable = False
    v.flags.writeable = False
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def _scale(h_mat: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(h_mat)))


def psd_status(h, tol: Tolerances = DEFAULT_TOL) -> PsdResult:
    """Classify as PD, PSD_SINGULAR, or INDEFINITE with the minimal eigenvalue."""
    mat = _as_matrix(h)
    lam_min = float(herm_eigen(mat).eigenvalues[0])
    threshold = tol.psd_tol * _scale(mat)
    if lam_min > threshold:
        status = PsdStatus.PD
    elif lam_min < -threshold:
        status = PsdStatus.INDEFINITE
    else:
        status = PsdStatus.PSD_SINGULAR
    return PsdResult(status, lam_min)


def numeric_rank(h, tol: Tolerances = DEFAULT_TOL) -> int:
    """Number of eigenvalues above rank_tol * max(1, ||H||_F) in magnitude."""
    mat = _as_matrix(h)
    w = herm_eigen(mat).eigenvalues
    return int(np.sum(np.abs(w) > tol.rank_tol * _scale(mat)))


def null_vector(h, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Unit eigenvector for the smallest eigenvalue of a singular matrix."""
    mat = _as_matrix(h)
    dec = herm_eigen(mat)
    lam = float(dec.eigenvalues[0])
    fro = float(np.linalg.norm(mat))
    if abs(lam) > 10.0 * tol.rank_tol * max(1.0, fro):
        raise PreconditionError("matrix is numerically nonsingular; no null vector")
    return dec.eigenvectors[:, 0].copy()


def schur_product(a, b) -> HermitianMatrix:
    """Entrywise (Schur) product of two Hermitian matrices."""
    am = _as_matrix(a)
    bm = _as_matrix(b)
    if am.shape != bm.shape:
        raise InputError("Schur product requires equal dimensions")
    return HermitianMatrix(am * bm)


def entrywise_quotient(a, b, min_denom: float = 1e-12) -> HermitianMatrix:
    """Entrywise quotient A_ij / B_ij; rejects near-zero denominator entries."""
    am = _as_matrix(a)
    bm = _as_matrix(b)
    if am.shape != bm.shape:
        raise InputError("entrywise quotient requires equal dimensions")
    if np.min(np.abs(bm)) <= min_denom:
        raise InputError("denominator entry too close to zero")
    return HermitianMatrix(am / bm)


def _strip_leading(coeffs: np.ndarray) -> np.ndarray:
    k = len(coeffs)
    while k > 0 and coeffs[k - 1] == 0.0:
        k -= 1
    return coeffs[:k]


def _eval_scale(coeffs: np.ndarray, z: complex) -> float:
    az = abs(z)
    s = 0.0
    p = 1.0
    for c in coeffs:
        s += abs(c) * p
        p *= az
    return max(1.0, s)


def poly_roots_clustered(
    coeffs, tol: Tolerances = DEFAULT_TOL, max_iter: int = 500
) -> list[tuple[complex, int]]:
    """All roots with multiplicities, by Aberth iteration plus clustering.

    Roots closer than 1e3 * root_tol are merged into a single root of higher
    multiplicity (their mean).  The iteration is run to step stagnation near
    machine precision, far below root_tol, so that exactly-multiple roots
    collapse onto their cluster reliably.
    """
    c = _strip_leading(np.asarray(coeffs, dtype=np.complex128))
    if len(c) < 2:
        raise InputError("poly_roots requires degree >= 1")
    _check_finite(c, "polynomial coefficients")
    n = len(c) - 1
    monic = c / c[-1]
    if n == 1:
        roots = np.array([-monic[0]])
    else:
        radius = 1.0 + float(np.max(np.abs(monic[:-1])))
        angles = 2.0 * np.pi * np.arange(n) / n + 0.35
        z0 = radius * np.exp(1j * angles)
        roots, _, _ = _kernels.aberth(monic, z0, max_iter)
    # The step-stagnation exit is not trusted on its own; every root must
    # meet the residual contract regardless of how the iteration stopped.
    residuals = np.abs(np.polynomial.polynomial.polyval(roots, monic))
    for k in range(n):
        if residuals[k] > tol.root_tol * _eval_scale(monic, roots[k]):
            raise ConvergenceError(
                f"root iteration residual {residuals[k]:.3e} exceeds contract"
            )
    merge_radius = 1e3 * tol.root_tol
    order = np.lexsort((roots.imag, roots.real))
    roots = roots[order]
    clusters: list[list[complex]] = []
    for z in roots:
        placed = False
        for cl in clusters:
            if any(abs(z - u) <= merge_radius for u in cl):
                cl.append(z)
                placed = True
                break
        if not placed:
            clusters.append([z])
    out = []
    for cl in clusters:
        mean = complex(np.mean(np.asarray(cl)))
        out.append((mean, len(cl)))
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out


def poly_roots(coeffs, tol: Tolerances = DEFAULT_TOL, max_iter: int = 500) -> np.ndarray:
    """Root multiset: each clustered root repeated by its multiplicity."""
    flat = []
    for z, m in poly_roots_clustered(coeffs, tol, max_iter):
        flat.extend([z] * m)
    return np.asarray(flat, dtype=np.complex128)


def complex_null_space(m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of {v : M v = 0}, as columns, via the Gram matrix.

    Acceptable at this scale (matrices with at most a few dozen columns);
    each returned vector satisfies ||M v|| <= 10 * rank_tol * ||M||_F.
    """
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise InputError("complex_null_space requires a 2-D array")
    _check_finite(arr, "matrix")
    gram = arr.conj().T @ arr
    dec = herm_eigen(HermitianMatrix(gram))
    fro = float(np.linalg.norm(arr))
    thr = (tol.rank_tol * max(1.0, fro)) ** 2
    cols = [j for j in range(gram.shape[0]) if dec.eigenvalues[j] <= thr]
    if not cols:
        raise PreconditionError("null space is trivial")
    return dec.eigenvectors[:, cols].copy()
