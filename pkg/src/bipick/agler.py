"""Bidisk solvability, extremality, and uniqueness machinery.

Solvability is certified in one of two independently checkable ways: an
explicit PSD pair (Gamma, Delta) reconstructing the target data matrix, or an
admissible kernel whose Schur product with W fails to be PSD.  When neither
certificate is reached within budget the verdict is UNDECIDED; the package
never guesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _kernels
from .errors import (
    DegenerateInputError,
    InputError,
    NumericalFailureError,
    PreconditionError,
    UnsolvableError,
)
from .numcore import (
    DEFAULT_TOL,
    HermitianMatrix,
    PsdResult,
    PsdStatus,
    Tolerances,
    complex_null_space,
    herm_eigen,
    null_vector,
    numeric_rank,
    psd_status,
    schur_product,
)
from .poly import Blaschke

__all__ = [
    "PickProblem2D",
    "DataMatrices",
    "AglerPair",
    "KernelCandidate",
    "KernelCertificate",
    "NonUniquenessCertificate",
    "SolvabilityStatus",
    "Extremality",
    "Minimality",
    "SzegoVerdict",
    "data_matrices",
    "szego_kernel",
    "szego_uniqueness_test",
    "admissible_check",
    "kernel_library",
    "unsolvability_certificate",
    "dykstra_decompose",
    "solvability_status",
    "extremality_test",
    "extremality_scan",
    "minimality_test",
    "nonuniqueness_certificate",
    "nonuniqueness_flag",
]

MIN_NODE_SEPARATION = 1e-8
GRAPH_HINT_TOL = 1e-8
DEFAULT_DYKSTRA_BUDGET = 200_000
NONZERO_PAIR_NORM = 1e-8


@dataclass(frozen=True)
class PickProblem2D:
    """Distinct bidisk nodes with targets in the closed unit disk."""

    nodes: tuple[tuple[complex, complex], ...]
    targets: tuple[complex, ...]

    def __post_init__(self):
        nodes = tuple((complex(a), complex(b)) for a, b in self.nodes)
        targets = tuple(complex(w) for w in self.targets)
        if len(nodes) != len(targets) or len(nodes) < 1:
            raise InputError("need equally many nodes and targets, at least one")
        for a, b in nodes:
            if abs(a) >= 1.0 or abs(b) >= 1.0:
                raise InputError("nodes must lie in the open bidisk")
        if any(abs(w) > 1.0 + 1e-14 for w in targets):
            raise InputError("targets must lie in the closed unit disk")
        n = len(nodes)
        for i in range(n):
            for j in range(i + 1, n):
                d = abs(nodes[i][0] - nodes[j][0]) ** 2 + abs(nodes[i][1] - nodes[j][1]) ** 2
                if d <= MIN_NODE_SEPARATION**2:
                    raise InputError("nodes must be pairwise distinct")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "targets", targets)

    @property
    def size(self) -> int:
        return len(self.nodes)

    def coords(self, k: int) -> np.ndarray:
        return np.asarray([z[k - 1] for z in self.nodes])

    def drop_node(self, i: int) -> "PickProblem2D":
        keep = [j for j in range(self.size) if j != i]
        return PickProblem2D(
            tuple(self.nodes[j] for j in keep),
            tuple(self.targets[j] for j in keep),
        )


@dataclass(frozen=True)
class DataMatrices:
    w: HermitianMatrix
    l1: HermitianMatrix
    l2: HermitianMatrix


@dataclass(frozen=True)
class AglerPair:
    """PSD pair with W = Gamma . L1 + Delta . L2 up to the stored residual."""

    gamma: HermitianMatrix
    delta: HermitianMatrix
    residual: float


@dataclass(frozen=True)
class KernelCandidate:
    kernel: HermitianMatrix
    provenance: str
    hint: Blaschke | None = None


@dataclass(frozen=True)
class KernelCertificate:
    """Admissible kernel witnessing unsolvability through lambda_min(W.K) < 0."""

    kernel: HermitianMatrix
    lambda_min_wk: float
    provenance: str


@dataclass(frozen=True)
class NonUniquenessCertificate:
    """Rank-one perturbation certificate for a solution depending on z2.

    u spans the cokernel of gamma0, xr are the rank-one factors of the
    coordinate-ratio matrix, v solves the orthogonality constraints, and
    epsilon is the largest PSD-preserving weight of Delta = epsilon v(x)v*.
    """

    u: np.ndarray
    xr: tuple[np.ndarray, ...]
    v: np.ndarray
    epsilon: float
    pair: AglerPair


class SolvabilityStatus(Enum):
    SOLVABLE = "SOLVABLE"
    UNSOLVABLE = "UNSOLVABLE"
    UNDECIDED = "UNDECIDED"


class Extremality(Enum):
    EXTREMAL = "EXTREMAL"
    NOT_EXTREMAL = "NOT_EXTREMAL"
    UNDECIDED = "UNDECIDED"


class Minimality(Enum):
    MINIMAL = "MINIMAL"
    NOT_MINIMAL = "NOT_MINIMAL"
    UNDECIDED = "UNDECIDED"


class SzegoVerdict(Enum):
    UNIQUE = "UNIQUE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class SzegoTestResult:
    verdict: SzegoVerdict
    wk: HermitianMatrix
    wk_status: PsdResult
    flags_unsolvable: bool


@dataclass(frozen=True)
class DykstraResult:
    feasible: bool
    pair: AglerPair | None
    iterations: int
    residual: float


@dataclass(frozen=True)
class SolvabilityReport:
    status: SolvabilityStatus
    pair: AglerPair | None = None
    certificate: KernelCertificate | None = None
    iterations: int = 0
    residual: float | None = None


@dataclass(frozen=True)
class ExtremalityReport:
    status: Extremality
    eps: float
    certificate: KernelCertificate | None = None
    scaled_pair: AglerPair | None = None


@dataclass(frozen=True)
class MinimalityReport:
    status: Minimality
    subreports: tuple[ExtremalityReport, ...] = field(default_factory=tuple)


def _w_matrix(targets) -> HermitianMatrix:
    w = np.asarray(targets, dtype=np.complex128)
    return HermitianMatrix(1.0 - np.conj(w)[:, None] * w[None, :])


def _coord_matrix(coords) -> HermitianMatrix:
    z = np.asarray(coords, dtype=np.complex128)
    return HermitianMatrix(1.0 - np.conj(z)[:, None] * z[None, :])


def data_matrices(prob: PickProblem2D) -> DataMatrices:
    """The matrices W, Lambda^1, Lambda^2 built entrywise from the data."""
    return DataMatrices(
        w=_w_matrix(prob.targets),
        l1=_coord_matrix(prob.coords(1)),
        l2=_coord_matrix(prob.coords(2)),
    )


def szego_kernel(nodes) -> HermitianMatrix:
    """K_ij = 1 / ((1 - conj(z1_i) z1_j)(1 - conj(z2_i) z2_j))."""
    z1 = np.asarray([z[0] for z in nodes], dtype=np.complex128)
    z2 = np.asarray([z[1] for z in nodes], dtype=np.complex128)
    d1 = 1.0 - np.conj(z1)[:, None] * z1[None, :]
    d2 = 1.0 - np.conj(z2)[:, None] * z2[None, :]
    return HermitianMatrix(1.0 / (d1 * d2))


def pair_residual(gamma, delta, data: DataMatrices) -> float:
    rec = gamma.mat * data.l1.mat + delta.mat * data.l2.mat
    return float(np.linalg.norm(data.w.mat - rec))


def verify_agler_pair(pair: AglerPair, data: DataMatrices, tol: Tolerances) -> None:
    """Independent recheck of the pair invariants; raises on violation."""
    for name, h in (("gamma", pair.gamma), ("delta", pair.delta)):
        if psd_status(h, tol).status is PsdStatus.INDEFINITE:
            raise NumericalFailureError(f"{name} factor of the pair is indefinite")
    res = pair_residual(pair.gamma, pair.delta, data)
    if res > tol.residual_tol:
        raise NumericalFailureError(f"pair residual {res:.3e} exceeds tolerance")


def szego_uniqueness_test(
    prob: PickProblem2D, tol: Tolerances = DEFAULT_TOL
) -> SzegoTestResult:
    """UNIQUE when W composed with the Szego kernel is singular PSD.

    INDEFINITE additionally flags the problem as unsolvable (the Szego kernel
    is admissible), but the verdict stays INCONCLUSIVE for uniqueness.
    """
    wk = schur_product(_w_matrix(prob.targets), szego_kernel(prob.nodes))
    stat = psd_status(wk, tol)
    verdict = (
        SzegoVerdict.UNIQUE
        if stat.status is PsdStatus.PSD_SINGULAR
        else SzegoVerdict.INCONCLUSIVE
    )
    return SzegoTestResult(
        verdict=verdict,
        wk=wk,
        wk_status=stat,
        flags_unsolvable=stat.status is PsdStatus.INDEFINITE,
    )


def admissible_check(k, data: DataMatrices, tol: Tolerances = DEFAULT_TOL) -> bool:
    """K is admissible when PD with Lambda^1 . K and Lambda^2 . K both PSD."""
    km = k if isinstance(k, HermitianMatrix) else HermitianMatrix(k)
    if km.dim != data.w.dim:
        raise InputError("kernel dimension does not match the problem")
    if psd_status(km, tol).status is not PsdStatus.PD:
        return False
    for lam in (data.l1, data.l2):
        if psd_status(schur_product(lam, km), tol).status is PsdStatus.INDEFINITE:
            return False
    return True


def kernel_library(
    prob: PickProblem2D,
    hints: tuple[Blaschke, ...] = (),
    tol: Tolerances = DEFAULT_TOL,
) -> list[KernelCandidate]:
    """Admissible kernel candidates: the Szego kernel plus one graph kernel
    per hint whose graph carries every node."""
    data = data_matrices(prob)
    out = [KernelCandidate(szego_kernel(prob.nodes), "szego")]
    z1 = prob.coords(1)
    z2 = prob.coords(2)
    for hint in hints:
        values = np.atleast_1d(np.asarray(hint(z1), dtype=np.complex128))
        if np.max(np.abs(values - z2)) > GRAPH_HINT_TOL:
            continue
        den = 1.0 - np.conj(values)[:, None] * values[None, :]
        if np.min(np.abs(den)) < 1e-12:
            continue
        out.append(KernelCandidate(HermitianMatrix(1.0 / den), "graph", hint))
    return [c for c in out if admissible_check(c.kernel, data, tol)]


def _violation(w: HermitianMatrix, cand: KernelCandidate, tol: Tolerances):
    wk = schur_product(w, cand.kernel)
    stat = psd_status(wk, tol)
    if stat.status is PsdStatus.INDEFINITE:
        return KernelCertificate(cand.kernel, stat.lambda_min, cand.provenance)
    return None


def unsolvability_certificate(
    prob: PickProblem2D,
    library: list[KernelCandidate] | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> KernelCertificate | None:
    """First admissible kernel with lambda_min(W.K) below the PSD threshold."""
    if library is None:
        library = kernel_library(prob, (), tol)
    w = _w_matrix(prob.targets)
    for cand in library:
        cert = _violation(w, cand, tol)
        if cert is not None:
            return cert
    return None


def dykstra_decompose(
    prob: PickProblem2D,
    tol: Tolerances = DEFAULT_TOL,
    budget: int = DEFAULT_DYKSTRA_BUDGET,
) -> DykstraResult:
    """Alternating projections between the matching affine set and PSD x PSD.

    FEASIBLE results are independently re-verified before being returned;
    hitting the budget yields UNDECIDED (feasible=False), never an error.
    """
    data = data_matrices(prob)
    w, l1, l2 = data.w.mat, data.l1.mat, data.l2.mat
    g0 = np.ascontiguousarray(w / (2.0 * l1))
    d0 = np.ascontiguousarray(w / (2.0 * l2))
    g, d, res, iters, feasible = _kernels.dykstra_pair(
        np.ascontiguousarray(w),
        np.ascontiguousarray(l1),
        np.ascontiguousarray(l2),
        g0,
        d0,
        tol.residual_tol,
        budget,
    )
    if not feasible:
        return DykstraResult(False, None, iters, float(res))
    gamma = HermitianMatrix(g)
    delta = HermitianMatrix(d)
    pair = AglerPair(gamma, delta, pair_residual(gamma, delta, data))
    verify_agler_pair(pair, data, tol)
    return DykstraResult(True, pair, iters, pair.residual)


def solvability_status(
    prob: PickProblem2D,
    tol: Tolerances = DEFAULT_TOL,
    hints: tuple[Blaschke, ...] = (),
    budget: int = DEFAULT_DYKSTRA_BUDGET,
) -> SolvabilityReport:
    """Certificate-first solvability decision.

    An unsolvability certificate short-circuits; otherwise the Dykstra search
    either produces a verified Agler pair (SOLVABLE) or honestly reports
    UNDECIDED after its budget.
    """
    library = kernel_library(prob, hints, tol)
    cert = unsolvability_certificate(prob, library, tol)
    if cert is not None:
        return SolvabilityReport(SolvabilityStatus.UNSOLVABLE, certificate=cert)
    dyk = dykstra_decompose(prob, tol, budget)
    if dyk.feasible:
        return SolvabilityReport(
            SolvabilityStatus.SOLVABLE,
            pair=dyk.pair,
            iterations=dyk.iterations,
            residual=dyk.residual,
        )
    return SolvabilityReport(
        SolvabilityStatus.UNDECIDED, iterations=dyk.iterations, residual=dyk.residual
    )


def extremality_test(
    prob: PickProblem2D,
    eps: float = 1e-2,
    tol: Tolerances = DEFAULT_TOL,
    hints: tuple[Blaschke, ...] = (),
    budget: int = DEFAULT_DYKSTRA_BUDGET,
    base: SolvabilityReport | None = None,
) -> ExtremalityReport:
    """Operational extremality: scale targets by 1/(1-eps) and re-decide.

    EXTREMAL when the scaled problem carries an unsolvability certificate,
    NOT_EXTREMAL when it is solvable, UNDECIDED otherwise.  The verdict is
    eps-coarse by construction; `extremality_scan` refines across epsilons.
    """
    if not 0.0 < eps < 1.0:
        raise InputError("eps must lie in (0, 1)")
    if base is None:
        base = solvability_status(prob, tol, hints, budget)
    if base.status is SolvabilityStatus.UNSOLVABLE:
        raise UnsolvableError("extremality is undefined for unsolvable data")
    scale = 1.0 / (1.0 - eps)
    scaled_targets = tuple(w * scale for w in prob.targets)
    library = kernel_library(prob, hints, tol)
    ws = _w_matrix(scaled_targets)
    for cand in library:
        cert = _violation(ws, cand, tol)
        if cert is not None:
            return ExtremalityReport(Extremality.EXTREMAL, eps, certificate=cert)
    if all(abs(w) < 1.0 for w in scaled_targets):
        scaled = PickProblem2D(prob.nodes, scaled_targets)
        dyk = dykstra_decompose(scaled, tol, budget)
        if dyk.feasible:
            return ExtremalityReport(
                Extremality.NOT_EXTREMAL, eps, scaled_pair=dyk.pair
            )
    return ExtremalityReport(Extremality.UNDECIDED, eps)


def extremality_scan(
    prob: PickProblem2D,
    eps_values: tuple[float, ...] = (1e-1, 1e-2, 1e-3),
    tol: Tolerances = DEFAULT_TOL,
    hints: tuple[Blaschke, ...] = (),
    budget: int = DEFAULT_DYKSTRA_BUDGET,
) -> list[tuple[float, ExtremalityReport]]:
    """Extremality verdicts across a ladder of scaling margins."""
    base = solvability_status(prob, tol, hints, budget)
    return [
        (eps, extremality_test(prob, eps, tol, hints, budget, base))
        for eps in eps_values
    ]


def minimality_test(
    prob: PickProblem2D,
    eps: float = 1e-2,
    tol: Tolerances = DEFAULT_TOL,
    hints: tuple[Blaschke, ...] = (),
    budget: int = DEFAULT_DYKSTRA_BUDGET,
    base: ExtremalityReport | None = None,
) -> MinimalityReport:
    """MINIMAL when no leave-one-out subproblem is extremal.

    Requires the full problem to be extremal; zero-node subproblems (from
    one-node input) are vacuously not extremal.
    """
    if base is None:
        base = extremality_test(prob, eps, tol, hints, budget)
    if base.status is not Extremality.EXTREMAL:
        raise PreconditionError("minimality requires an extremal problem")
    subreports = []
    for i in range(prob.size):
        if prob.size == 1:
            break
        sub = prob.drop_node(i)
        subreports.append(extremality_test(sub, eps, tol, hints, budget))
    statuses = [r.status for r in subreports]
    if any(s is Extremality.EXTREMAL for s in statuses):
        return MinimalityReport(Minimality.NOT_MINIMAL, tuple(subreports))
    if any(s is Extremality.UNDECIDED for s in statuses):
        return MinimalityReport(Minimality.UNDECIDED, tuple(subreports))
    return MinimalityReport(Minimality.MINIMAL, tuple(subreports))


def nonuniqueness_certificate(
    gamma0,
    a,
    data: DataMatrices | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> NonUniquenessCertificate:
    """Rank-one Delta with Gamma = Gamma0 - A . Delta still PSD.

    gamma0 must be singular PSD of rank N-1 and A PSD with rank M < N.  The
    construction picks u spanning the cokernel of gamma0, writes A as a sum
    of M rank-one factors, solves the M linear constraints for v, and
    maximizes epsilon by bisection against the PSD oracle.
    """
    g0 = gamma0 if isinstance(gamma0, HermitianMatrix) else HermitianMatrix(gamma0)
    am = a if isinstance(a, HermitianMatrix) else HermitianMatrix(a)
    n = g0.dim
    if am.dim != n:
        raise InputError("matrix dimensions do not match")
    if psd_status(g0, tol).status is not PsdStatus.PSD_SINGULAR:
        raise PreconditionError("gamma0 must be singular PSD")
    if numeric_rank(g0, tol) != n - 1:
        raise PreconditionError("gamma0 must have rank N - 1")
    if psd_status(am, tol).status is PsdStatus.INDEFINITE:
        raise PreconditionError("A must be PSD")
    m_rank = numeric_rank(am, tol)
    if m_rank >= n:
        raise PreconditionError("A must have rank below N")

    u = null_vector(g0, tol)
    dec = herm_eigen(am)
    thr = tol.rank_tol * max(1.0, am.frobenius())
    xr = [
        np.sqrt(max(dec.eigenvalues[r], 0.0)) * dec.eigenvectors[:, r]
        for r in range(n)
        if abs(dec.eigenvalues[r]) > thr
    ]
    constraints = np.asarray([x * np.conj(u) for x in xr])
    v = complex_null_space(constraints, tol)[:, 0]
    b = am.mat * np.outer(v, np.conj(v))
    nb = float(np.linalg.norm(b))
    if nb <= 1e-14:
        raise DegenerateInputError("perturbation direction vanished")

    def _psd_ok(eps_try: float) -> bool:
        cand = HermitianMatrix(g0.mat - eps_try * b)
        return psd_status(cand, tol).status is not PsdStatus.INDEFINITE

    lo = 0.0
    hi = 2.0 * g0.frobenius() / nb
    grow = 0
    while _psd_ok(hi):
        lo = hi
        hi *= 2.0
        grow += 1
        if grow > 60:
            raise NumericalFailureError("epsilon bisection failed to bracket")
    while hi - lo > 1e-6 * hi:
        mid = 0.5 * (lo + hi)
        if _psd_ok(mid):
            lo = mid
        else:
            hi = mid
    epsilon = lo
    if epsilon <= 1e-8:
        raise DegenerateInputError("vanishing perturbation margin")
    delta = HermitianMatrix(epsilon * np.outer(v, np.conj(v)))
    gamma = HermitianMatrix(g0.mat - am.mat * delta.mat)
    if data is not None:
        residual = pair_residual(gamma, delta, data)
    else:
        residual = float(
            np.linalg.norm(g0.mat - gamma.mat - am.mat * delta.mat)
        )
    pair = AglerPair(gamma, delta, residual)
    if residual > tol.residual_tol:
        raise NumericalFailureError(f"certificate residual {residual:.3e}")
    for name, h in (("gamma", gamma), ("delta", delta)):
        if psd_status(h, tol).status is PsdStatus.INDEFINITE:
            raise NumericalFailureError(f"certificate {name} factor indefinite")
    return NonUniquenessCertificate(
        u=u, xr=tuple(xr), v=v, epsilon=epsilon, pair=pair
    )


def nonuniqueness_flag(pair: AglerPair) -> bool:
    """True when both pair factors are nonzero, witnessing a genuinely
    two-variable solution."""
    return (
        pair.gamma.frobenius() > NONZERO_PAIR_NORM
        and pair.delta.frobenius() > NONZERO_PAIR_NORM
    )
