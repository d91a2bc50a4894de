"""Top-level verdicts: the bidegree gate, strong-Pick certificates, and the
complete classifier for problems with a one-variable solution.

The classifier follows the rank pipeline: the one-variable Pick matrix of the
data must be singular of rank N-1 (the extremal-minimal hypothesis), the
coordinate-ratio matrix must be PSD, and its rank fixes the degree of the
Blaschke product whose graph carries the nodes.  Uniqueness then reduces to a
degree comparison, certified either by a singular Szego product on an
auxiliary problem or by an explicit rank-one perturbation pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .agler import (
    DataMatrices,
    NonUniquenessCertificate,
    PickProblem2D,
    SzegoTestResult,
    SzegoVerdict,
    data_matrices,
    nonuniqueness_certificate,
    szego_uniqueness_test,
)
from .errors import (
    ExtremalMinimalViolation,
    InputError,
    NumericalFailureError,
    PreconditionError,
)
from .hardy2 import (
    MonomialVerdict,
    hs_condition_sample,
    monomial_certificate,
    orthogonality_check,
    random_h2_poly,
)
from .numcore import (
    DEFAULT_TOL,
    HermitianMatrix,
    PsdStatus,
    Tolerances,
    entrywise_quotient,
    numeric_rank,
    poly_roots,
    psd_status,
)
from .pick1d import interpolate_blaschke
from .poly import BiPoly, Blaschke, RationalInner, bidisk_grid, blaschke_to_fraction, graph_poly
from .rng import STREAM_CLASSIFY_W, STREAM_SWEEP, STREAM_VARIETY_NODES, rng_for

__all__ = [
    "GatePrediction",
    "DegreeGateVerdict",
    "Verdict",
    "ClassificationReport",
    "SzegoEvidence",
    "PairEvidence",
    "degree_gate",
    "one_variable_classifier",
    "sample_variety_nodes",
    "conjecture_sweep",
    "ConjectureSweepReport",
]

CRITERION_MONOMIAL = "monomial-orthogonality-certificate"
CRITERION_REGULAR = "regular-rational-criterion"
REGULAR_MARGIN = 1e-3
NODE_ON_CURVE_TOL = 1e-8
PREIMAGE_SEPARATION = 1e-4


class GatePrediction(Enum):
    PREDICTED_STRONG = "PREDICTED_STRONG"
    PREDICTED_NOT_STRONG = "PREDICTED_NOT_STRONG"
    MIXED_UNDETERMINED = "MIXED_UNDETERMINED"


@dataclass(frozen=True)
class DegreeGateVerdict:
    """Bidegree comparison between f and the curve polynomial.

    The strict-dominance direction is a conjectured criterion; the report
    lists which proved criteria additionally apply to the instance.
    """

    prediction: GatePrediction
    f_bidegree: tuple[int, int]
    p_bidegree: tuple[int, int]
    applicable_criteria: tuple[str, ...]


class Verdict(Enum):
    UNIQUE = "UNIQUE"
    NOT_UNIQUE = "NOT_UNIQUE"


@dataclass(frozen=True)
class SzegoEvidence:
    """Auxiliary constant-second-coordinate problem with singular Szego product."""

    w: complex
    preimages: tuple[complex, ...]
    problem: PickProblem2D
    test: SzegoTestResult
    rank: int


@dataclass(frozen=True)
class PairEvidence:
    certificate: NonUniquenessCertificate


@dataclass(frozen=True)
class ClassificationReport:
    problem: PickProblem2D
    f: RationalInner
    gamma0: HermitianMatrix
    a: HermitianMatrix
    n1: int
    f_degree: int
    m: Blaschke
    p: BiPoly
    verdict: Verdict
    evidence: SzegoEvidence | PairEvidence


def degree_gate(f: RationalInner, p: BiPoly, tol: Tolerances = DEFAULT_TOL) -> DegreeGateVerdict:
    """Compare bidegrees of f and p and list applicable proved criteria."""
    d1, d2 = f.bidegree
    n1, n2 = p.bidegree
    if d1 < n1 and d2 < n2:
        prediction = GatePrediction.PREDICTED_STRONG
    elif d1 >= n1 and d2 >= n2:
        prediction = GatePrediction.PREDICTED_NOT_STRONG
    else:
        prediction = GatePrediction.MIXED_UNDETERMINED
    criteria: list[str] = []
    num_terms = f.numerator.terms
    if len(num_terms) == 1 and f.denominator.total_degree() == 0:
        if monomial_certificate(f.numerator, p).verdict is MonomialVerdict.CERTIFIED:
            criteria.append(CRITERION_MONOMIAL)
    z1, z2 = bidisk_grid()
    if np.min(np.abs(f.denominator(z1, z2))) > REGULAR_MARGIN:
        criteria.append(CRITERION_REGULAR)
    return DegreeGateVerdict(prediction, (d1, d2), (n1, n2), tuple(criteria))


def _as_one_variable_targets(f: RationalInner, nodes) -> tuple[complex, ...]:
    return tuple(complex(f(z1, 0.0)) for z1, _ in nodes)


def one_variable_classifier(
    f: RationalInner,
    nodes,
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 0,
) -> ClassificationReport:
    """Classify the problem {nodes -> f(first coordinates)} for one-variable f.

    Raises ExtremalMinimalViolation when the data's one-variable Pick matrix
    is not singular of rank N-1, and InputError when the coordinate-ratio
    matrix is indefinite (inconsistent node geometry).
    """
    if not f.depends_only_on_z1():
        raise InputError("f must depend on z1 only")
    nodes = tuple((complex(a), complex(b)) for a, b in nodes)
    if len(nodes) < 2:
        raise InputError("classifier needs at least two nodes")
    targets = _as_one_variable_targets(f, nodes)
    prob = PickProblem2D(nodes, targets)
    data = data_matrices(prob)
    n = prob.size

    gamma0 = entrywise_quotient(data.w, data.l1)
    g_stat = psd_status(gamma0, tol)
    if g_stat.status is PsdStatus.INDEFINITE or numeric_rank(gamma0, tol) != n - 1:
        raise ExtremalMinimalViolation(
            "one-variable Pick matrix must be singular PSD of rank N-1"
        )
    a = entrywise_quotient(data.l2, data.l1)
    if psd_status(a, tol).status is PsdStatus.INDEFINITE:
        raise InputError("coordinate-ratio matrix is indefinite; data inconsistent")
    n1 = numeric_rank(a, tol)
    m = interpolate_blaschke([z[0] for z in nodes], [z[1] for z in nodes], tol)
    if m.degree != n1:
        raise NumericalFailureError(
            f"graph Blaschke degree {m.degree} does not match rank {n1}"
        )
    p = graph_poly(m)
    on_curve = max(abs(p(z1, z2)) for z1, z2 in nodes)
    if on_curve > NODE_ON_CURVE_TOL:
        raise NumericalFailureError("nodes left the constructed curve")

    f_degree = f.bidegree[0]
    if f_degree < n1:
        evidence = _szego_evidence(f, m, n1, tol, seed)
        if evidence.test.verdict is not SzegoVerdict.UNIQUE:
            raise NumericalFailureError(
                "auxiliary Szego test failed to certify uniqueness"
            )
        verdict = Verdict.UNIQUE
    else:
        cert = nonuniqueness_certificate(gamma0, a, data, tol)
        evidence = PairEvidence(cert)
        verdict = Verdict.NOT_UNIQUE

    return ClassificationReport(
        problem=prob,
        f=f,
        gamma0=gamma0,
        a=a,
        n1=n1,
        f_degree=f_degree,
        m=m,
        p=p,
        verdict=verdict,
        evidence=evidence,
    )


def _szego_evidence(
    f: RationalInner, m: Blaschke, n1: int, tol: Tolerances, seed: int
) -> SzegoEvidence:
    """Find w with n1 distinct preimages under m and test the induced problem."""
    q, r = blaschke_to_fraction(m)
    rng = rng_for(seed, STREAM_CLASSIFY_W)
    for _ in range(200):
        w = complex(0.8 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))
        if abs(w) < 1e-3:
            continue
        shifted = q - w * r
        if shifted.degree < n1:
            continue
        roots = poly_roots(shifted.coeffs, tol)
        if len(roots) != n1:
            continue
        if any(abs(z) >= 1.0 for z in roots):
            raise NumericalFailureError("preimage escaped the unit disk")
        separated = all(
            abs(roots[i] - roots[j]) > PREIMAGE_SEPARATION
            for i in range(n1)
            for j in range(i + 1, n1)
        )
        if not separated:
            continue
        preimages = tuple(complex(z) for z in roots)
        aux_nodes = tuple((z, w) for z in preimages)
        aux_targets = tuple(complex(f(z, 0.0)) for z in preimages)
        aux = PickProblem2D(aux_nodes, aux_targets)
        test = szego_uniqueness_test(aux, tol)
        rank = numeric_rank(test.wk, tol)
        return SzegoEvidence(w, preimages, aux, test, rank)
    raise NumericalFailureError("could not find a level with distinct preimages")


def sample_variety_nodes(
    m: Blaschke, count: int, seed: int = 0
) -> tuple[tuple[complex, complex], ...]:
    """Seeded nodes (lam, m(lam)) on the graph, pairwise separated by 1e-3."""
    if count < 1:
        raise InputError("count must be at least 1")
    rng = rng_for(seed, STREAM_VARIETY_NODES)
    nodes: list[tuple[complex, complex]] = []
    for _ in range(200 * count):
        lam = complex(0.9 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))
        pt = (lam, complex(m(lam)))
        if all(
            abs(pt[0] - a) ** 2 + abs(pt[1] - b) ** 2 > 1e-6 for a, b in nodes
        ):
            nodes.append(pt)
            if len(nodes) == count:
                return tuple(nodes)
    raise InputError("rejection sampling exhausted; request fewer nodes")


@dataclass(frozen=True)
class SweepSzegoRow:
    n_nodes: int
    verdict: str


@dataclass(frozen=True)
class ConjectureSweepReport:
    """Structured evidence table for the degree gate on one instance.

    Aggregates the gate, exact orthogonality trials when the monomial
    criterion applies, a sampled inequality verdict, and Szego tests on
    node sets sampled from the curve when it is a graph.  Evidence only;
    the gate's conjectured direction is never claimed settled.
    """

    gate: DegreeGateVerdict
    orthogonality_trials: int
    orthogonality_max: float | None
    hs_verdict: str | None
    szego_rows: tuple[SweepSzegoRow, ...]


def _graph_blaschke_from_curve(p: BiPoly, tol: Tolerances) -> Blaschke | None:
    """Recover m with p ~ z2 r(z1) - q(z1) when the curve is a graph."""
    if p.degree(2) != 1:
        return None
    rows = p.coeff_in_var(2)
    q_neg, r = rows[0], rows[1]
    if r.is_zero():
        return None
    try:
        zeros = poly_roots((-1.0 * q_neg).coeffs, tol) if q_neg.degree >= 1 else []
    except Exception:  # noqa: BLE001 - fall back to no-graph handling
        return None
    zeros = list(zeros)
    if any(abs(z) >= 1.0 - 1e-9 for z in zeros):
        return None
    # Match the leading data to a unimodular constant; reject non-inner graphs.
    num = -1.0 * q_neg
    probe = 0.37 + 0.21j
    base = np.prod([(probe - a) / (1.0 - np.conj(a) * probe) for a in zeros]) if zeros else 1.0
    rv = r(probe)
    if abs(rv) < 1e-12 or abs(base) < 1e-12:
        return None
    u = complex(num(probe) / rv / base)
    if abs(abs(u) - 1.0) > 1e-8:
        return None
    try:
        return Blaschke(u / abs(u), tuple(zeros))
    except InputError:
        return None


def conjecture_sweep(
    f: RationalInner,
    p: BiPoly,
    trials: int = 100,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOL,
) -> ConjectureSweepReport:
    """Probe the degree gate on one (f, p) instance with seeded experiments."""
    gate = degree_gate(f, p, tol)
    rng = rng_for(seed, STREAM_SWEEP)
    orth_max: float | None = None
    hs_verdict: str | None = None
    n_orth = 0
    # constant f is trivially unique on any curve; the sampled inequality is
    # only defined for nonconstant functions
    if CRITERION_MONOMIAL in gate.applicable_criteria and f.numerator.total_degree() > 0:
        gs = [random_h2_poly(rng) for _ in range(trials)]
        orth_max = max(
            (orthogonality_check(f.numerator, p, g) for g in gs), default=0.0
        )
        n_orth = trials
        hs_verdict = hs_condition_sample(f, p, gs).verdict
    rows: list[SweepSzegoRow] = []
    m = _graph_blaschke_from_curve(p, tol)
    if m is not None:
        node_rng_seed = seed + 1
        for k, n_nodes in enumerate((2, 3, 4)):
            try:
                nodes = sample_variety_nodes(m, n_nodes, node_rng_seed + k)
            except InputError:
                continue
            targets = tuple(complex(f(a, b)) for a, b in nodes)
            prob = PickProblem2D(nodes, targets)
            test = szego_uniqueness_test(prob, tol)
            rows.append(SweepSzegoRow(n_nodes, test.verdict.value))
    return ConjectureSweepReport(
        gate=gate,
        orthogonality_trials=n_orth,
        orthogonality_max=orth_max,
        hs_verdict=hs_verdict,
        szego_rows=tuple(rows),
    )
