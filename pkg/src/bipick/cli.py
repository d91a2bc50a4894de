"""Batch command-line front end.

Subcommands parse JSON problem files, dispatch to the library, and emit a
human-readable report or, with --json, a canonical machine report (sorted
keys, fixed layout) that is byte-identical for identical input, seed, and
configuration.  The environment variable PICK_SEED overrides the seed flag,
PICK_NUMBA=0 selects the pure-numpy kernels.

Exit codes: 0 success, 2 parse error, 3 unsolvable, 4 undecided or numerical
failure, 5 hypothesis violated, 6 degenerate input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from . import serialize as ser
from .agler import (
    Extremality,
    Minimality,
    SolvabilityStatus,
    extremality_test,
    minimality_test,
    solvability_status,
)
from .bezout import common_zero_bound_check, intersection_report
from .classify import conjecture_sweep, degree_gate, one_variable_classifier
from .errors import (
    BipickError,
    CommonFactorError,
    ConvergenceError,
    DegenerateInputError,
    ExtremalMinimalViolation,
    InputError,
    NumericalFailureError,
    PreconditionError,
    UnsolvableError,
)
from .hardy2 import hs_condition_sample, monomial_certificate, orthogonality_check, random_h2_poly
from .numcore import PsdStatus, Tolerances, numeric_rank, psd_status
from .pick1d import pick_matrix, solve_schur, solve_singular
from .poly import BiPoly, RationalInner
from .rng import STREAM_HARDY_G, rng_for

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNSOLVABLE = 3
EXIT_UNDECIDED = 4
EXIT_HYPOTHESIS = 5
EXIT_DEGENERATE = 6


def _tolerances(args) -> Tolerances:
    if args.tol is None:
        return Tolerances()
    # --tol rescales the whole family, preserving the default ratios.
    base = float(args.tol)
    return Tolerances(
        psd_tol=base, rank_tol=10.0 * base, root_tol=base / 10.0,
        residual_tol=10.0 * base,
    )


def _seed(args) -> int:
    env = os.environ.get("PICK_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"PICK_SEED must be an integer: {env!r}") from exc
    return int(args.seed)


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from exc


def _load_hints(path: str | None):
    if path is None:
        return ()
    doc = _load_json(path)
    items = doc.get("hints", doc) if isinstance(doc, dict) else doc
    if not isinstance(items, list):
        raise InputError("hints file must hold a list of Blaschke products")
    return tuple(ser.decode_blaschke(d) for d in items)


def _decode_f(doc) -> RationalInner:
    if isinstance(doc, dict) and "numerator" in doc:
        return ser.decode_rational_inner(doc)
    if isinstance(doc, dict) and "terms" in doc:
        return RationalInner(ser.decode_bipoly(doc), BiPoly.constant(1.0))
    raise InputError("f must be a rational function or a polynomial")


def _emit(envelope: dict, as_json: bool, text: str) -> None:
    if as_json:
        sys.stdout.write(json.dumps(envelope, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_solve1d(args) -> int:
    tol = _tolerances(args)
    prob = ser.decode_problem1d(_load_json(args.file))
    pm = pick_matrix(prob)
    stat = psd_status(pm, tol)
    rank = numeric_rank(pm, tol)
    envelope = {
        "command": "solve1d",
        "seed": _seed(args),
        "pick_matrix": ser.encode_matrix(pm),
        "psd_status": stat.status.value,
        "lambda_min": float(stat.lambda_min),
        "rank": rank,
        "solvable": stat.status is not PsdStatus.INDEFINITE,
        "unique": None,
        "solution": None,
        "degree": None,
        "interpolation_residual": None,
    }
    if stat.status is PsdStatus.INDEFINITE:
        _emit(envelope, args.json, _text_solve1d(envelope))
        return EXIT_UNSOLVABLE
    envelope["unique"] = stat.status is PsdStatus.PSD_SINGULAR
    m = solve_singular(prob, tol) if envelope["unique"] else solve_schur(prob, tol)
    resid = float(
        max(abs(m(z) - w) for z, w in zip(prob.nodes, prob.targets))
    )
    envelope["solution"] = ser.encode_blaschke(m)
    envelope["degree"] = m.degree
    envelope["interpolation_residual"] = resid
    _emit(envelope, args.json, _text_solve1d(envelope))
    return EXIT_OK


def _text_solve1d(e: dict) -> str:
    lines = [
        "one-variable Pick problem",
        f"  psd status: {e['psd_status']} (lambda_min = {e['lambda_min']:.3e})",
        f"  rank: {e['rank']}",
        f"  solvable: {e['solvable']}",
    ]
    if e["unique"] is not None:
        lines.append(f"  unique: {e['unique']}")
    if e["solution"] is not None:
        zeros = e["solution"]["zeros"]
        lines.append(f"  solution: Blaschke of degree {e['degree']}, zeros {zeros}")
        lines.append(f"  interpolation residual: {e['interpolation_residual']:.3e}")
    return "\n".join(lines) + "\n"


def _cmd_check(args) -> int:
    tol = _tolerances(args)
    prob = ser.decode_problem2d(_load_json(args.file))
    hints = _load_hints(args.hints)
    budget = int(args.max_iter)
    report = solvability_status(prob, tol, hints, budget)
    envelope = {
        "command": "check",
        "seed": _seed(args),
        "problem": ser.encode_problem2d(prob),
        "solvability": ser.encode_solvability(report),
        "extremality": None,
        "minimality": None,
    }
    code = {
        SolvabilityStatus.SOLVABLE: EXIT_OK,
        SolvabilityStatus.UNSOLVABLE: EXIT_UNSOLVABLE,
        SolvabilityStatus.UNDECIDED: EXIT_UNDECIDED,
    }[report.status]
    if args.extremal and report.status is SolvabilityStatus.SOLVABLE:
        ext = extremality_test(prob, tol=tol, hints=hints, budget=budget, base=report)
        envelope["extremality"] = ser.encode_extremality(ext)
        if ext.status is Extremality.EXTREMAL:
            mini = minimality_test(prob, tol=tol, hints=hints, budget=budget, base=ext)
            envelope["minimality"] = ser.encode_minimality(mini)
            if mini.status is Minimality.UNDECIDED:
                code = EXIT_UNDECIDED
        elif ext.status is Extremality.UNDECIDED:
            code = EXIT_UNDECIDED
    _emit(envelope, args.json, _text_check(envelope))
    return code


def _text_check(e: dict) -> str:
    s = e["solvability"]
    lines = [f"bidisk Pick problem: {s['status']}"]
    if s["pair"]:
        lines.append(
            f"  Agler pair residual: {s['pair']['residual']:.3e}"
            f" ({s['iterations']} iterations)"
        )
    if s["certificate"]:
        c = s["certificate"]
        lines.append(
            f"  unsolvability kernel ({c['provenance']}):"
            f" lambda_min(W.K) = {c['lambda_min_wk']:.3e}"
        )
    if e["extremality"]:
        x = e["extremality"]
        lines.append(f"  extremality (eps={x['eps']}): {x['status']}")
    if e["minimality"]:
        lines.append(f"  minimality: {e['minimality']['status']}")
    return "\n".join(lines) + "\n"


def _cmd_classify(args) -> int:
    tol = _tolerances(args)
    doc = _load_json(args.file)
    if not isinstance(doc, dict) or "f" not in doc or "nodes" not in doc:
        raise InputError("classify input needs f and nodes")
    f = _decode_f(doc["f"])
    nodes = [
        (ser.decode_complex(p[0]), ser.decode_complex(p[1])) for p in doc["nodes"]
    ]
    seed = _seed(args)
    report = one_variable_classifier(f, nodes, tol, seed)
    envelope = {
        "command": "classify",
        "seed": seed,
        "report": ser.encode_classification(report),
        "assumed_hypotheses": ["problem extremal and minimal (rank check only)"],
        "full_extremality": None,
    }
    code = EXIT_OK
    if args.full_extremality:
        ext = extremality_test(
            report.problem, tol=tol, hints=(report.m,), budget=int(args.max_iter)
        )
        envelope["full_extremality"] = ser.encode_extremality(ext)
        envelope["assumed_hypotheses"] = ["problem minimal (extremality cross-checked)"]
        if ext.status is Extremality.NOT_EXTREMAL:
            code = EXIT_HYPOTHESIS
    _emit(envelope, args.json, _text_classify(envelope))
    return code


def _text_classify(e: dict) -> str:
    r = e["report"]
    lines = [
        f"one-variable classification: {r['verdict']}",
        f"  deg_1(f) = {r['f_degree']}, curve degree n1 = {r['n1']}",
        f"  evidence: {r['evidence']['type']}",
    ]
    if e["full_extremality"]:
        lines.append(f"  extremality cross-check: {e['full_extremality']['status']}")
    return "\n".join(lines) + "\n"


def _cmd_strongpick(args) -> int:
    tol = _tolerances(args)
    doc = _load_json(args.file)
    if not isinstance(doc, dict) or "f" not in doc or "p" not in doc:
        raise InputError("strongpick input needs f and p")
    f = _decode_f(doc["f"])
    p = ser.decode_bipoly(doc["p"])
    seed = _seed(args)
    sweep = conjecture_sweep(f, p, int(args.trials), seed, tol)
    envelope = {
        "command": "strongpick",
        "seed": seed,
        "gate": ser.encode_gate(sweep.gate),
        "sweep": {
            "orthogonality_trials": sweep.orthogonality_trials,
            "orthogonality_max": sweep.orthogonality_max,
            "hs_verdict": sweep.hs_verdict,
            "szego_rows": [
                {"n_nodes": row.n_nodes, "verdict": row.verdict}
                for row in sweep.szego_rows
            ],
        },
        "assumed_hypotheses": ["p irreducible (not verified)"],
    }
    _emit(envelope, args.json, _text_strongpick(envelope))
    return EXIT_OK


def _text_strongpick(e: dict) -> str:
    g = e["gate"]
    lines = [
        f"degree gate: {g['prediction']}"
        f" (f {tuple(g['f_bidegree'])} vs p {tuple(g['p_bidegree'])})",
        f"  applicable criteria: {', '.join(g['applicable_criteria']) or 'none'}",
    ]
    s = e["sweep"]
    if s["orthogonality_trials"]:
        lines.append(
            f"  orthogonality: max |<f, pg>| = {s['orthogonality_max']:.1e}"
            f" over {s['orthogonality_trials']} trials; sampling {s['hs_verdict']}"
        )
    for row in s["szego_rows"]:
        lines.append(f"  szego test on {row['n_nodes']} curve nodes: {row['verdict']}")
    lines.append(f"  assumed: {'; '.join(e['assumed_hypotheses'])}")
    return "\n".join(lines) + "\n"


def _cmd_bezout(args) -> int:
    tol = _tolerances(args)
    doc = _load_json(args.file)
    seed = _seed(args)
    if not isinstance(doc, dict):
        raise InputError("bezout input must be an object")
    if "f" in doc and "g" in doc:
        f = _decode_f(doc["f"])
        g = _decode_f(doc["g"])
        rep = common_zero_bound_check(f, g, tol, seed)
        envelope = {
            "command": "bezout",
            "seed": seed,
            "mode": "inner",
            "bidegree_f": list(rep.bidegree_f),
            "bidegree_g": list(rep.bidegree_g),
            "bound": rep.bound,
            "finite_total": rep.finite_total,
            "at_infinity": rep.at_infinity,
            "total": rep.total,
            "finite_points": _encode_points(rep.finite_points),
        }
    elif "p" in doc and "q" in doc:
        p = ser.decode_bipoly(doc["p"])
        q = ser.decode_bipoly(doc["q"])
        rep = intersection_report(p, q, tol, seed)
        envelope = {
            "command": "bezout",
            "seed": seed,
            "mode": "curves",
            "total": rep.total,
            "at_infinity": rep.at_infinity,
            "finite_total": rep.finite_total,
            "finite_points": _encode_points(rep.finite_points),
        }
    else:
        raise InputError("bezout input needs either f and g or p and q")
    _emit(envelope, args.json, _text_bezout(envelope))
    return EXIT_OK


def _encode_points(points) -> list:
    return [
        {
            "point": [ser.encode_complex(x), ser.encode_complex(y)],
            "multiplicity": int(m),
        }
        for (x, y), m in points
    ]


def _text_bezout(e: dict) -> str:
    lines = [f"intersection accounting ({e['mode']})"]
    if e["mode"] == "inner":
        lines.append(
            f"  finite common zeros: {e['finite_total']} <= bound {e['bound']}"
        )
    else:
        lines.append(f"  finite common zeros: {e['finite_total']}")
    lines.append(f"  at infinity: {e['at_infinity']}; degree product: {e['total']}")
    for pt in e["finite_points"]:
        x, y = pt["point"]
        lines.append(
            f"    ({x['re']:+.6f}{x['im']:+.6f}i, {y['re']:+.6f}{y['im']:+.6f}i)"
            f" x{pt['multiplicity']}"
        )
    return "\n".join(lines) + "\n"


def _cmd_hardy(args) -> int:
    doc = _load_json(args.file)
    if not isinstance(doc, dict) or "f" not in doc or "p" not in doc:
        raise InputError("hardy input needs f and p")
    f = _decode_f(doc["f"])
    p = ser.decode_bipoly(doc["p"])
    seed = _seed(args)
    trials = int(args.trials)
    rng = rng_for(seed, STREAM_HARDY_G)
    gs = [random_h2_poly(rng) for _ in range(trials)]
    cert_block = None
    orth_max = None
    fnum = f.numerator
    if len(fnum.terms) == 1 and f.denominator.total_degree() == 0:
        cert = monomial_certificate(fnum, p)
        cert_block = {
            "verdict": cert.verdict.value,
            "f_degrees": list(cert.f_degrees),
            "offending": [list(t) for t in cert.offending],
        }
        if cert.verdict.value == "CERTIFIED":
            orth_max = max(
                (orthogonality_check(fnum, p, g) for g in gs), default=0.0
            )
    samples = hs_condition_sample(f, p, gs)
    envelope = {
        "command": "hardy",
        "seed": seed,
        "trials": trials,
        "certificate": cert_block,
        "orthogonality_max": orth_max,
        "sample_verdict": samples.verdict,
        "rows": [
            {
                "lhs": row.lhs,
                "rhs": row.rhs,
                "strict": row.strict,
                "degenerate": row.degenerate,
            }
            for row in samples.rows
        ],
    }
    _emit(envelope, args.json, _text_hardy(envelope))
    return EXIT_OK


def _text_hardy(e: dict) -> str:
    lines = ["Hardy-space certificates"]
    if e["certificate"]:
        lines.append(f"  monomial certificate: {e['certificate']['verdict']}")
        if e["orthogonality_max"] is not None:
            lines.append(
                f"  max |<f, pg>| over {e['trials']} trials: {e['orthogonality_max']:.1e}"
            )
    lines.append(f"  sampled strict inequality: {e['sample_verdict']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_COMMANDS = {
    "solve1d": _cmd_solve1d,
    "check": _cmd_check,
    "classify": _cmd_classify,
    "strongpick": _cmd_strongpick,
    "bezout": _cmd_bezout,
    "hardy": _cmd_hardy,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="JSON input file")
    common.add_argument("--tol", type=float, default=None,
                        help="PSD tolerance; rescales the whole tolerance family")
    common.add_argument("--seed", type=int, default=0,
                        help="base seed (PICK_SEED overrides)")
    common.add_argument("--max-iter", type=int, default=200_000,
                        help="projection iteration budget")
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--hints", default=None,
                        help="JSON file with Blaschke graph hints")
    common.add_argument("--trials", type=int, default=100,
                        help="sample count for randomized probes")
    parser = argparse.ArgumentParser(
        prog="pick",
        description="Nevanlinna-Pick bidisk interpolation: solvability, "
                    "extremality, uniqueness, and intersection certificates",
    )
    parser.add_argument("--version", action="version", version=f"pick {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    p_solve = sub.add_parser("solve1d", parents=[common],
                             help="one-variable Pick problem")
    p_check = sub.add_parser("check", parents=[common],
                             help="bidisk solvability with certificates")
    p_check.add_argument("--extremal", action="store_true",
                         help="also test extremality and minimality")
    p_classify = sub.add_parser("classify", parents=[common],
                                help="classify a one-variable-solution problem")
    p_classify.add_argument("--full-extremality", action="store_true",
                            help="cross-check extremality with the kernel test")
    sub.add_parser("strongpick", parents=[common],
                   help="degree gate and strong-Pick evidence for (f, p)")
    sub.add_parser("bezout", parents=[common],
                   help="intersection counts and the common-zero bound")
    sub.add_parser("hardy", parents=[common],
                   help="coefficient-space certificates for (f, p)")
    _ = p_solve
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except UnsolvableError as exc:
        sys.stderr.write(f"unsolvable: {exc}\n")
        return EXIT_UNSOLVABLE
    except ExtremalMinimalViolation as exc:
        sys.stderr.write(f"hypothesis violated: {exc}\n")
        return EXIT_HYPOTHESIS
    except (CommonFactorError, DegenerateInputError) as exc:
        sys.stderr.write(f"degenerate input: {exc}\n")
        return EXIT_DEGENERATE
    except (NumericalFailureError, ConvergenceError, PreconditionError) as exc:
        sys.stderr.write(f"undecided: {exc}\n")
        return EXIT_UNDECIDED
    except BipickError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_UNDECIDED


if __name__ == "__main__":
    sys.exit(main())
