"""JSON encoding and decoding for problems, polynomials, and reports.

Complex numbers always serialize as {"re": ..., "im": ...} objects, never as
two-element arrays.  Encoders sort term lists so identical inputs produce
byte-identical output; decoders rebuild the full typed objects and re-run
their validation.
"""

from __future__ import annotations

import numpy as np

from .agler import (
    AglerPair,
    ExtremalityReport,
    Extremality,
    KernelCertificate,
    Minimality,
    MinimalityReport,
    NonUniquenessCertificate,
    PickProblem2D,
    SolvabilityReport,
    SolvabilityStatus,
    SzegoTestResult,
    SzegoVerdict,
)
from .classify import (
    ClassificationReport,
    DegreeGateVerdict,
    GatePrediction,
    PairEvidence,
    SzegoEvidence,
    Verdict,
)
from .errors import InputError
from .numcore import HermitianMatrix, PsdResult, PsdStatus
from .pick1d import PickProblem1D
from .poly import BiPoly, Blaschke, RationalInner, UniPoly

__all__ = [
    "encode_complex",
    "decode_complex",
    "encode_bipoly",
    "decode_bipoly",
    "encode_unipoly",
    "decode_unipoly",
    "encode_blaschke",
    "decode_blaschke",
    "encode_rational_inner",
    "decode_rational_inner",
    "encode_problem1d",
    "decode_problem1d",
    "encode_problem2d",
    "decode_problem2d",
    "encode_matrix",
    "decode_matrix",
    "encode_vector",
    "decode_vector",
    "encode_agler_pair",
    "decode_agler_pair",
    "encode_kernel_certificate",
    "decode_kernel_certificate",
    "encode_nonuniqueness_certificate",
    "decode_nonuniqueness_certificate",
    "encode_solvability",
    "decode_solvability",
    "encode_extremality",
    "decode_extremality",
    "encode_minimality",
    "decode_minimality",
    "encode_classification",
    "decode_classification",
    "encode_gate",
    "decode_gate",
]


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise InputError(msg)


def encode_complex(z: complex) -> dict:
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def decode_complex(d) -> complex:
    _require(isinstance(d, dict) and set(d) <= {"re", "im"}, "complex must be {re, im}")
    return complex(float(d.get("re", 0.0)), float(d.get("im", 0.0)))


def encode_vector(v) -> list:
    return [encode_complex(z) for z in np.asarray(v).ravel()]


def decode_vector(items) -> np.ndarray:
    _require(isinstance(items, list), "vector must be a list")
    return np.asarray([decode_complex(d) for d in items], dtype=np.complex128)


def encode_matrix(h) -> list:
    mat = h.mat if isinstance(h, HermitianMatrix) else np.asarray(h)
    return [[encode_complex(z) for z in row] for row in mat]


def decode_matrix(rows) -> HermitianMatrix:
    _require(isinstance(rows, list) and rows, "matrix must be a nonempty list")
    data = [[decode_complex(z) for z in row] for row in rows]
    return HermitianMatrix(np.asarray(data, dtype=np.complex128))


def encode_bipoly(p: BiPoly) -> dict:
    terms = [
        {"i": i, "j": j, "re": float(c.real), "im": float(c.imag)}
        for (i, j), c in sorted(p.terms.items())
    ]
    return {"terms": terms}


def decode_bipoly(d) -> BiPoly:
    _require(isinstance(d, dict) and "terms" in d, "polynomial must have terms")
    items = []
    for t in d["terms"]:
        _require(isinstance(t, dict), "term must be an object")
        i = int(t.get("i", 0))
        j = int(t.get("j", 0))
        items.append(((i, j), complex(float(t.get("re", 0.0)), float(t.get("im", 0.0)))))
    return BiPoly(items)


def encode_unipoly(u: UniPoly) -> dict:
    terms = [
        {"i": k, "re": float(c.real), "im": float(c.imag)}
        for k, c in enumerate(u.coeffs)
        if c != 0.0
    ]
    return {"terms": terms}


def decode_unipoly(d) -> UniPoly:
    _require(isinstance(d, dict) and "terms" in d, "polynomial must have terms")
    if not d["terms"]:
        return UniPoly.zero()
    degree = max(int(t.get("i", 0)) for t in d["terms"])
    coeffs = np.zeros(degree + 1, dtype=np.complex128)
    for t in d["terms"]:
        coeffs[int(t.get("i", 0))] += complex(float(t.get("re", 0.0)), float(t.get("im", 0.0)))
    return UniPoly(coeffs)


def encode_blaschke(m: Blaschke) -> dict:
    return {
        "unimodular": encode_complex(m.unimodular),
        "zeros": [encode_complex(a) for a in m.zeros],
    }


def decode_blaschke(d) -> Blaschke:
    _require(isinstance(d, dict) and "unimodular" in d, "Blaschke needs a constant")
    zeros = tuple(decode_complex(z) for z in d.get("zeros", []))
    return Blaschke(decode_complex(d["unimodular"]), zeros)


def encode_rational_inner(f: RationalInner) -> dict:
    return {
        "numerator": encode_bipoly(f.numerator),
        "denominator": encode_bipoly(f.denominator),
    }


def decode_rational_inner(d) -> RationalInner:
    _require(
        isinstance(d, dict) and "numerator" in d and "denominator" in d,
        "rational function needs numerator and denominator",
    )
    return RationalInner(decode_bipoly(d["numerator"]), decode_bipoly(d["denominator"]))


def encode_problem1d(p: PickProblem1D) -> dict:
    return {
        "nodes": [encode_complex(z) for z in p.nodes],
        "targets": [encode_complex(w) for w in p.targets],
    }


def decode_problem1d(d) -> PickProblem1D:
    _require(
        isinstance(d, dict) and "nodes" in d and "targets" in d,
        "problem needs nodes and targets",
    )
    nodes = tuple(decode_complex(z) for z in d["nodes"])
    targets = tuple(decode_complex(w) for w in d["targets"])
    return PickProblem1D(nodes, targets)


def encode_problem2d(p: PickProblem2D) -> dict:
    return {
        "nodes": [[encode_complex(a), encode_complex(b)] for a, b in p.nodes],
        "targets": [encode_complex(w) for w in p.targets],
    }


def decode_problem2d(d) -> PickProblem2D:
    _require(
        isinstance(d, dict) and "nodes" in d and "targets" in d,
        "problem needs nodes and targets",
    )
    nodes = []
    for pair in d["nodes"]:
        _require(isinstance(pair, list) and len(pair) == 2, "node must be a pair")
        nodes.append((decode_complex(pair[0]), decode_complex(pair[1])))
    targets = tuple(decode_complex(w) for w in d["targets"])
    return PickProblem2D(tuple(nodes), targets)


def encode_agler_pair(pair: AglerPair) -> dict:
    return {
        "gamma": encode_matrix(pair.gamma),
        "delta": encode_matrix(pair.delta),
        "residual": float(pair.residual),
    }


def decode_agler_pair(d) -> AglerPair:
    _require(isinstance(d, dict) and "gamma" in d and "delta" in d, "pair needs factors")
    return AglerPair(
        gamma=decode_matrix(d["gamma"]),
        delta=decode_matrix(d["delta"]),
        residual=float(d.get("residual", 0.0)),
    )


def encode_kernel_certificate(c: KernelCertificate) -> dict:
    return {
        "kernel": encode_matrix(c.kernel),
        "lambda_min_wk": float(c.lambda_min_wk),
        "provenance": c.provenance,
    }


def decode_kernel_certificate(d) -> KernelCertificate:
    _require(isinstance(d, dict) and "kernel" in d, "certificate needs a kernel")
    return KernelCertificate(
        kernel=decode_matrix(d["kernel"]),
        lambda_min_wk=float(d["lambda_min_wk"]),
        provenance=str(d["provenance"]),
    )


def encode_nonuniqueness_certificate(c: NonUniquenessCertificate) -> dict:
    return {
        "u": encode_vector(c.u),
        "xr": [encode_vector(x) for x in c.xr],
        "v": encode_vector(c.v),
        "epsilon": float(c.epsilon),
        "pair": encode_agler_pair(c.pair),
    }


def decode_nonuniqueness_certificate(d) -> NonUniquenessCertificate:
    _require(isinstance(d, dict) and "pair" in d, "certificate needs a pair")
    return NonUniquenessCertificate(
        u=decode_vector(d["u"]),
        xr=tuple(decode_vector(x) for x in d["xr"]),
        v=decode_vector(d["v"]),
        epsilon=float(d["epsilon"]),
        pair=decode_agler_pair(d["pair"]),
    )


def encode_solvability(r: SolvabilityReport) -> dict:
    return {
        "status": r.status.value,
        "pair": encode_agler_pair(r.pair) if r.pair is not None else None,
        "certificate": (
            encode_kernel_certificate(r.certificate)
            if r.certificate is not None
            else None
        ),
        "iterations": int(r.iterations),
        "residual": float(r.residual) if r.residual is not None else None,
    }


def decode_solvability(d) -> SolvabilityReport:
    return SolvabilityReport(
        status=SolvabilityStatus(d["status"]),
        pair=decode_agler_pair(d["pair"]) if d.get("pair") else None,
        certificate=(
            decode_kernel_certificate(d["certificate"]) if d.get("certificate") else None
        ),
        iterations=int(d.get("iterations", 0)),
        residual=float(d["residual"]) if d.get("residual") is not None else None,
    )


def encode_extremality(r: ExtremalityReport) -> dict:
    return {
        "status": r.status.value,
        "eps": float(r.eps),
        "certificate": (
            encode_kernel_certificate(r.certificate)
            if r.certificate is not None
            else None
        ),
        "scaled_pair": (
            encode_agler_pair(r.scaled_pair) if r.scaled_pair is not None else None
        ),
    }


def decode_extremality(d) -> ExtremalityReport:
    return ExtremalityReport(
        status=Extremality(d["status"]),
        eps=float(d["eps"]),
        certificate=(
            decode_kernel_certificate(d["certificate"]) if d.get("certificate") else None
        ),
        scaled_pair=(
            decode_agler_pair(d["scaled_pair"]) if d.get("scaled_pair") else None
        ),
    )


def encode_minimality(r: MinimalityReport) -> dict:
    return {
        "status": r.status.value,
        "subreports": [encode_extremality(s) for s in r.subreports],
    }


def decode_minimality(d) -> MinimalityReport:
    return MinimalityReport(
        status=Minimality(d["status"]),
        subreports=tuple(decode_extremality(s) for s in d.get("subreports", [])),
    )


def _encode_szego_test(t: SzegoTestResult) -> dict:
    return {
        "verdict": t.verdict.value,
        "wk": encode_matrix(t.wk),
        "wk_status": t.wk_status.status.value,
        "lambda_min": float(t.wk_status.lambda_min),
        "flags_unsolvable": bool(t.flags_unsolvable),
    }


def _decode_szego_test(d) -> SzegoTestResult:
    return SzegoTestResult(
        verdict=SzegoVerdict(d["verdict"]),
        wk=decode_matrix(d["wk"]),
        wk_status=PsdResult(PsdStatus(d["wk_status"]), float(d["lambda_min"])),
        flags_unsolvable=bool(d["flags_unsolvable"]),
    )


def encode_gate(g: DegreeGateVerdict) -> dict:
    return {
        "prediction": g.prediction.value,
        "f_bidegree": list(g.f_bidegree),
        "p_bidegree": list(g.p_bidegree),
        "applicable_criteria": list(g.applicable_criteria),
    }


def decode_gate(d) -> DegreeGateVerdict:
    return DegreeGateVerdict(
        prediction=GatePrediction(d["prediction"]),
        f_bidegree=tuple(int(x) for x in d["f_bidegree"]),
        p_bidegree=tuple(int(x) for x in d["p_bidegree"]),
        applicable_criteria=tuple(str(s) for s in d["applicable_criteria"]),
    )


def encode_classification(r: ClassificationReport) -> dict:
    if isinstance(r.evidence, SzegoEvidence):
        evidence = {
            "type": "szego-singular",
            "w": encode_complex(r.evidence.w),
            "preimages": [encode_complex(z) for z in r.evidence.preimages],
            "problem": encode_problem2d(r.evidence.problem),
            "test": _encode_szego_test(r.evidence.test),
            "rank": int(r.evidence.rank),
        }
    else:
        evidence = {
            "type": "rank-one-perturbation",
            "certificate": encode_nonuniqueness_certificate(r.evidence.certificate),
        }
    return {
        "verdict": r.verdict.value,
        "problem": encode_problem2d(r.problem),
        "f": encode_rational_inner(r.f),
        "gamma0": encode_matrix(r.gamma0),
        "a": encode_matrix(r.a),
        "n1": int(r.n1),
        "f_degree": int(r.f_degree),
        "m": encode_blaschke(r.m),
        "p": encode_bipoly(r.p),
        "evidence": evidence,
    }


def decode_classification(d) -> ClassificationReport:
    ev = d["evidence"]
    if ev["type"] == "szego-singular":
        evidence = SzegoEvidence(
            w=decode_complex(ev["w"]),
            preimages=tuple(decode_complex(z) for z in ev["preimages"]),
            problem=decode_problem2d(ev["problem"]),
            test=_decode_szego_test(ev["test"]),
            rank=int(ev["rank"]),
        )
    elif ev["type"] == "rank-one-perturbation":
        evidence = PairEvidence(decode_nonuniqueness_certificate(ev["certificate"]))
    else:
        raise InputError(f"unknown evidence type {ev['type']!r}")
    return ClassificationReport(
        problem=decode_problem2d(d["problem"]),
        f=decode_rational_inner(d["f"]),
        gamma0=decode_matrix(d["gamma0"]),
        a=decode_matrix(d["a"]),
        n1=int(d["n1"]),
        f_degree=int(d["f_degree"]),
        m=decode_blaschke(d["m"]),
        p=decode_bipoly(d["p"]),
        verdict=Verdict(d["verdict"]),
        evidence=evidence,
    )
