"""Classical one-variable Pick interpolation.

Solvability and uniqueness are decided from the Pick matrix; solutions are
constructed as finite Blaschke products.  The singular (unique) case uses the
kernel-vector quotient, which is exact at the rank-deficiency locus where the
Schur recursion turns fragile; the positive-definite case runs the
Nevanlinna-Schur peeling recursion with a unimodular terminal parameter so
the result has degree exactly N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericalFailureError, PreconditionError, UnsolvableError
from .numcore import (
    DEFAULT_TOL,
    HermitianMatrix,
    PsdStatus,
    Tolerances,
    null_vector,
    numeric_rank,
    poly_roots,
    psd_status,
)
from .poly import Blaschke, UniPoly

__all__ = [
    "PickProblem1D",
    "pick_matrix",
    "solvable",
    "unique",
    "solve_singular",
    "solve_schur",
    "interpolate_blaschke",
]

MIN_NODE_SEPARATION = 1e-8
INTERP_RESIDUAL = 1e-8


@dataclass(frozen=True)
class PickProblem1D:
    """Distinct nodes in the open unit disk with targets in the closed disk."""

    nodes: tuple[complex, ...]
    targets: tuple[complex, ...]

    def __post_init__(self):
        nodes = tuple(complex(z) for z in self.nodes)
        targets = tuple(complex(w) for w in self.targets)
        if len(nodes) != len(targets) or len(nodes) < 1:
            raise InputError("need equally many nodes and targets, at least one")
        if any(abs(z) >= 1.0 for z in nodes):
            raise InputError("nodes must lie in the open unit disk")
        if any(abs(w) > 1.0 + 1e-14 for w in targets):
            raise InputError("targets must lie in the closed unit disk")
        n = len(nodes)
        for i in range(n):
            for j in range(i + 1, n):
                if abs(nodes[i] - nodes[j]) <= MIN_NODE_SEPARATION:
                    raise InputError("nodes must be pairwise distinct")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "targets", targets)

    @property
    def size(self) -> int:
        return len(self.nodes)


def pick_matrix(prob: PickProblem1D) -> HermitianMatrix:
    """P_ij = (1 - conj(w_i) w_j) / (1 - conj(z_i) z_j)."""
    z = np.asarray(prob.nodes)
    w = np.asarray(prob.targets)
    num = 1.0 - np.conj(w)[:, None] * w[None, :]
    den = 1.0 - np.conj(z)[:, None] * z[None, :]
    return HermitianMatrix(num / den)


def solvable(prob: PickProblem1D, tol: Tolerances = DEFAULT_TOL) -> bool:
    return psd_status(pick_matrix(prob), tol).status is not PsdStatus.INDEFINITE


def unique(prob: PickProblem1D, tol: Tolerances = DEFAULT_TOL) -> bool:
    status = psd_status(pick_matrix(prob), tol).status
    if status is PsdStatus.INDEFINITE:
        raise UnsolvableError("problem has no Schur-class solution")
    return status is PsdStatus.PSD_SINGULAR


def _leave_one_out(factors: list[np.ndarray], skip: int) -> np.ndarray:
    out = np.array([1.0 + 0j])
    for j, f in enumerate(factors):
        if j != skip:
            out = np.convolve(out, f)
    return out


def _match_unimodular(num: UniPoly, den: UniPoly, zeros: list[complex]) -> complex:
    # Evaluate the quotient away from zeros and poles to read off the constant.
    for probe in (0.0, 0.31, 0.31j, -0.47, 0.59 + 0.23j):
        pz = complex(probe)
        base = np.prod([(pz - a) / (1.0 - np.conj(a) * pz) for a in zeros]) if zeros else 1.0
        dval = den(pz)
        if abs(base) < 1e-6 or abs(dval) < 1e-9:
            continue
        u = num(pz) / dval / base
        if abs(abs(u) - 1.0) <= 1e-6:
            return u / abs(u)
    raise NumericalFailureError("could not normalize the Blaschke constant")


def _check_residual(m: Blaschke, prob: PickProblem1D) -> float:
    vals = m(np.asarray(prob.nodes))
    return float(np.max(np.abs(vals - np.asarray(prob.targets))))


def solve_singular(prob: PickProblem1D, tol: Tolerances = DEFAULT_TOL) -> Blaschke:
    """Unique solution when the Pick matrix is singular PSD.

    With gamma a kernel vector of P and k_i(z) = 1/(1 - conj(z_i) z), the
    solution is (sum conj(gamma_i) k_i) / (sum conj(gamma_i) conj(w_i) k_i);
    clearing denominators and extracting numerator roots yields the Blaschke
    form, whose degree equals the numeric rank of P.
    """
    pm = pick_matrix(prob)
    stat = psd_status(pm, tol)
    if stat.status is not PsdStatus.PSD_SINGULAR:
        raise PreconditionError("Pick matrix is not singular PSD")
    gamma = null_vector(pm, tol)
    c = np.conj(gamma)
    nodes = np.asarray(prob.nodes)
    targets = np.asarray(prob.targets)
    factors = [np.array([1.0 + 0j, -np.conj(z)]) for z in nodes]
    n = prob.size
    num = np.zeros(n, dtype=np.complex128)
    den = np.zeros(n, dtype=np.complex128)
    for i in range(n):
        basis = _leave_one_out(factors, i)
        num[: basis.size] += c[i] * basis
        den[: basis.size] += c[i] * np.conj(targets[i]) * basis
    num_poly = UniPoly(num)
    den_poly = UniPoly(den)
    if num_poly.is_zero() or den_poly.is_zero():
        raise NumericalFailureError("degenerate kernel-vector quotient")

    num_roots = list(poly_roots(num_poly.coeffs, tol)) if num_poly.degree >= 1 else []
    den_roots = list(poly_roots(den_poly.coeffs, tol)) if den_poly.degree >= 1 else []
    # Cancel shared factors between the two sides before reading off zeros.
    zeros: list[complex] = []
    for z in num_roots:
        hit = None
        for k, d in enumerate(den_roots):
            if abs(z - d) <= 1e-7 * (1.0 + abs(z)):
                hit = k
                break
        if hit is None:
            zeros.append(z)
        else:
            den_roots.pop(hit)
    if any(abs(a) >= 1.0 for a in zeros):
        raise NumericalFailureError("constructed zero escaped the unit disk")
    u = _match_unimodular(num_poly, den_poly, zeros)
    m = Blaschke(u, tuple(zeros))
    resid = _check_residual(m, prob)
    if resid > INTERP_RESIDUAL:
        raise NumericalFailureError(f"interpolation residual {resid:.3e}")
    rank = numeric_rank(pm, tol)
    if m.degree != rank:
        raise NumericalFailureError(
            f"constructed degree {m.degree} does not match rank {rank}"
        )
    return m


def solve_schur(prob: PickProblem1D, tol: Tolerances = DEFAULT_TOL) -> Blaschke:
    """Degree-N Blaschke solution when the Pick matrix is positive definite.

    Nevanlinna-Schur backward recursion: peel each node with a value-space
    Moebius map and a disk automorphism, close with a unimodular terminal
    parameter, then unwind.  If a rounding accident drops the degree the
    terminal parameter is rotated and the construction retried.
    """
    pm = pick_matrix(prob)
    if psd_status(pm, tol).status is not PsdStatus.PD:
        raise PreconditionError("Pick matrix is not positive definite")
    stack: list[tuple[complex, complex]] = []
    nodes = list(prob.nodes)
    targets = list(prob.targets)
    while nodes:
        lam0, w0 = nodes[0], targets[0]
        if abs(w0) >= 1.0:
            raise NumericalFailureError("reduced target reached the unit circle")
        stack.append((lam0, w0))
        new_nodes, new_targets = [], []
        for lam, w in zip(nodes[1:], targets[1:]):
            wp = (w - w0) / (1.0 - np.conj(w0) * w)
            b = (lam - lam0) / (1.0 - np.conj(lam0) * lam)
            new_nodes.append(lam)
            new_targets.append(wp / b)
        nodes, targets = new_nodes, new_targets

    n = prob.size
    last_error = "unset"
    for attempt in range(6):
        theta = attempt * np.pi / 3.0
        term = complex(np.cos(theta), np.sin(theta))
        q = np.array([term], dtype=np.complex128)
        r = np.array([1.0 + 0j])
        for lam, w in reversed(stack):
            shift = np.convolve(np.array([-lam, 1.0 + 0j]), q)
            damp = np.convolve(np.array([1.0 + 0j, -np.conj(lam)]), r)
            q, r = shift + w * damp, damp + np.conj(w) * shift
        q_poly = UniPoly(q)
        try:
            zeros = list(poly_roots(q_poly.coeffs, tol))
        except Exception as exc:  # noqa: BLE001 - retry with rotated terminal
            last_error = str(exc)
            continue
        if len(zeros) != n or any(abs(a) >= 1.0 for a in zeros):
            last_error = "degree or disk-containment assertion failed"
            continue
        try:
            u = _match_unimodular(q_poly, UniPoly(r), zeros)
            m = Blaschke(u, tuple(zeros))
        except (NumericalFailureError, InputError) as exc:
            last_error = str(exc)
            continue
        resid = _check_residual(m, prob)
        if resid <= INTERP_RESIDUAL:
            return m
        last_error = f"interpolation residual {resid:.3e}"
    raise NumericalFailureError(f"Schur recursion failed: {last_error}")


def interpolate_blaschke(
    nodes1, nodes2, tol: Tolerances = DEFAULT_TOL
) -> Blaschke:
    """Blaschke product m with m(nodes1[i]) = nodes2[i].

    Degree equals the numeric rank of the associated Pick matrix: the rank
    when that matrix is singular, the node count when positive definite.
    """
    prob = PickProblem1D(tuple(nodes1), tuple(nodes2))
    status = psd_status(pick_matrix(prob), tol).status
    if status is PsdStatus.INDEFINITE:
        raise UnsolvableError("graph interpolation data is not solvable")
    if status is PsdStatus.PSD_SINGULAR:
        return solve_singular(prob, tol)
    return solve_schur(prob, tol)
