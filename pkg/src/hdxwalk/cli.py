"""Command-line entry point.

One invocation, one self-contained report on stdout (JSON for analysis
commands, the complex document for ``gen``, CSV for ``walk``); diagnostics go
to stderr.  Reports embed the subcommand, flags, seeds, and input digests, and
are byte-identical across reruns with the same inputs.

Exit codes: 0 pass or not-applicable (without ``--strict``), 1 audit failure,
2 usage or input error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
from fractions import Fraction
from typing import Optional, TextIO

from . import __version__
from .cochain import Chain, cocycle_space, coboundary_space, mask_to_chain
from .complexes import (
    Complex2,
    complete_complex,
    degree_profile,
    dumps_complex,
    load_complex,
    random_complex,
    validate,
)
from .errors import (
    CapacityError,
    DegenerateComplexError,
    DomainError,
    HdxError,
    RegularityError,
)
from .expansion import (
    certify_exact,
    distance_formula_audit,
    fatness_constant,
    large_cuts_audit,
    local_view_bounds_audit,
    mixing_rate_bound,
    outgoing_edges_identity,
    sum_coboundaries_audit,
)
from .graphs import edge_graph, underlying_graph
from .spectral import cheeger_exhaustive, normalized_spectrum
from .walk import (
    Distribution,
    evolve_exact,
    high_order_step_counts,
    rapid_mixing_audit,
)

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
ERROR = "error"


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Chain):
        return obj.to_list()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, (frozenset, set)):
        return sorted(obj)
    return obj


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _report(ns: argparse.Namespace, inputs: dict, results, status: str) -> dict:
    args = {
        k: _jsonable(v)
        for k, v in sorted(vars(ns).items())
        if k not in ("func",) and v is not None
    }
    return {
        "command": args,
        "inputs": inputs,
        "results": _jsonable(results),
        "status": status,
    }


def _emit(doc: dict, out: TextIO) -> None:
    out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _exit_code(status: str, strict: bool) -> int:
    if status == FAIL:
        return 1
    if status == NOT_APPLICABLE and strict:
        return 1
    return 0


def _load(ns: argparse.Namespace) -> tuple[Complex2, dict]:
    return load_complex(ns.file), {"file": ns.file, "sha256": _digest(ns.file)}


def _pick_graph(X: Complex2, which: str):
    return underlying_graph(X) if which == "g0" else edge_graph(X).graph


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_gen(ns, out, err) -> int:
    if ns.kind == "complete":
        X = complete_complex(ns.n)
    else:
        X = random_complex(ns.n, ns.p, ns.seed)
    text = dumps_complex(X)
    if ns.output:
        with open(ns.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def _cmd_validate(ns, out, err) -> int:
    X, inputs = _load(ns)
    report = validate(X)
    status = PASS if report.ok else ERROR
    _emit(_report(ns, inputs, {"findings": list(report.findings)}, status), out)
    if not report.ok:
        print(f"validate: {len(report.findings)} finding(s)", file=err)
        return 2
    return 0


def _cmd_spectrum(ns, out, err) -> int:
    X, inputs = _load(ns)
    G = _pick_graph(X, ns.graph)
    report = normalized_spectrum(G, ns.tol)
    results = {
        "graph": ns.graph,
        "n": G.n,
        "k": G.regular_k,
        "normalized_eigenvalues": list(report.normalized_eigenvalues),
        "lambda2": report.lambda2,
        "lambda_n": report.lambda_n,
        "lambda_max_nontrivial": report.lambda_max_nontrivial,
        "tolerance_achieved": report.tolerance,
    }
    _emit(_report(ns, inputs, results, PASS), out)
    return 0


def _cmd_cheeger(ns, out, err) -> int:
    X, inputs = _load(ns)
    G = _pick_graph(X, ns.graph)
    result = cheeger_exhaustive(G)
    results = {
        "graph": ns.graph,
        "h_normalized": result.h_normalized,
        "witness": list(result.witness),
    }
    _emit(_report(ns, inputs, results, PASS), out)
    return 0


def _cmd_cocycles(ns, out, err) -> int:
    X, inputs = _load(ns)
    z = cocycle_space(X, ns.dim)
    b = coboundary_space(X, ns.dim)
    results = {
        "dimension": ns.dim,
        "cocycles": {"dim": z.dim, "basis": [c.to_list() for c in z.basis]},
        "coboundaries": {"dim": b.dim, "basis": [c.to_list() for c in b.basis]},
    }
    _emit(_report(ns, inputs, results, PASS), out)
    return 0


def _cmd_certify(ns, out, err) -> int:
    X, inputs = _load(ns)
    cert = certify_exact(X, max_bits=ns.max_bits)
    _emit(_report(ns, inputs, cert, PASS), out)
    return 0


def _iter_edge_subsets(X: Complex2, max_bits: int, *, half_only: bool = False):
    if X.n_edges > max_bits:
        raise CapacityError(
            f"lemma audit enumerates 2**edges subsets and is limited to "
            f"{max_bits} edges; got {X.n_edges}"
        )
    limit = X.n_edges // 2
    for mask in range(1 << X.n_edges):
        if half_only and mask.bit_count() > limit:
            continue
        yield mask_to_chain(1, mask)


def _audit_outgoing(X: Complex2, ns) -> dict:
    violations = []
    checked = 0
    for F in _iter_edge_subsets(X, ns.max_bits):
        checked += 1
        r = outgoing_edges_identity(X, F)
        if r.lhs != r.rhs:
            violations.append({"edges": F.to_list(), "lhs": r.lhs, "rhs": r.rhs})
    return {
        "lemma": "outgoing",
        "subsets_checked": checked,
        "violations": violations[:10],
        "status": PASS if not violations else FAIL,
    }


def _audit_large_cuts(X: Complex2, ns) -> dict:
    result = large_cuts_audit(underlying_graph(X))
    if not result.precondition_met:
        status = NOT_APPLICABLE
    else:
        status = PASS if result.passes else FAIL
    return {
        "lemma": "large-cuts",
        "min_cut": result.min_cut,
        "witness": list(result.witness),
        "k": result.k,
        "precondition_met": result.precondition_met,
        "holds": result.passes,
        "status": status,
    }


def _audit_distance(X: Complex2, ns) -> dict:
    mu = certify_exact(X, max_bits=ns.max_bits).mu
    violations = []
    checked = 0
    asserted = False
    for F in _iter_edge_subsets(X, ns.max_bits):
        report = distance_formula_audit(X, F, mu=mu)
        checked += 1
        if report.passes is None:
            continue
        asserted = True
        if not report.passes:
            bad = [e for e in report.entries if not e.equal]
            violations.append({"edges": F.to_list(), "vertices": [e.vertex for e in bad]})
    if violations:
        status = FAIL
    elif asserted:
        status = PASS
    else:
        status = NOT_APPLICABLE
    return {
        "lemma": "distance",
        "subsets_checked": checked,
        "violations": violations[:10],
        "status": status,
    }


def _audit_local_views(X: Complex2, ns) -> dict:
    cert = certify_exact(X, max_bits=ns.max_bits)
    lambda2 = normalized_spectrum(underlying_graph(X)).lambda2
    eta = fatness_constant(lambda2)
    violations = []
    checked = 0
    asserted = False
    for F in _iter_edge_subsets(X, ns.max_bits):
        report = local_view_bounds_audit(
            X, F, cert.epsilon_cosystolic, eta, mu=cert.mu, slack=ns.slack
        )
        checked += 1
        if report.passes is None:
            continue
        asserted = True
        if not report.passes:
            bad = [e.vertex for e in report.entries if not e.ok]
            violations.append({"edges": F.to_list(), "vertices": bad})
    status = FAIL if violations else (PASS if asserted else NOT_APPLICABLE)
    return {
        "lemma": "local-views",
        "eta": eta,
        "epsilon": _jsonable(cert.epsilon_cosystolic),
        "subsets_checked": checked,
        "violations": violations[:10],
        "status": status,
    }


def _audit_sum(X: Complex2, ns) -> dict:
    cert = certify_exact(X, max_bits=ns.max_bits)
    violations = []
    checked = 0
    for F in _iter_edge_subsets(X, ns.max_bits, half_only=True):
        result = sum_coboundaries_audit(X, F, cert.epsilon_cosystolic, slack=ns.slack)
        checked += 1
        if not result.passes:
            violations.append(
                {"edges": F.to_list(), "lhs": result.lhs, "rhs_bound": result.rhs_bound}
            )
    return {
        "lemma": "sum",
        "epsilon": _jsonable(cert.epsilon_cosystolic),
        "subsets_checked": checked,
        "violations": violations[:10],
        "status": PASS if not violations else FAIL,
    }


_LEMMA_RUNNERS = {
    "outgoing": _audit_outgoing,
    "large-cuts": _audit_large_cuts,
    "distance": _audit_distance,
    "local-views": _audit_local_views,
    "sum": _audit_sum,
}


def _cmd_audit(ns, out, err) -> int:
    X, inputs = _load(ns)
    lemmas = list(_LEMMA_RUNNERS) if ns.lemma == "all" else [ns.lemma]
    results = []
    for name in lemmas:
        try:
            results.append(_LEMMA_RUNNERS[name](X, ns))
        except (RegularityError, DomainError, DegenerateComplexError) as exc:
            results.append({"lemma": name, "status": NOT_APPLICABLE, "reason": str(exc)})
    statuses = {r["status"] for r in results}
    if FAIL in statuses:
        overall = FAIL
    elif NOT_APPLICABLE in statuses:
        overall = NOT_APPLICABLE
    else:
        overall = PASS
    _emit(_report(ns, inputs, {"lemmas": results}, overall), out)
    return _exit_code(overall, ns.strict)


def _cmd_walk(ns, out, err) -> int:
    X, _ = _load(ns)
    if not (0 <= ns.start < X.n_edges):
        raise DomainError(f"start edge {ns.start} out of range (complex has {X.n_edges})")
    if ns.paths is not None:
        counts = high_order_step_counts(X, ns.start, ns.steps, ns.paths, ns.seed)
        total = ns.paths
        uniform = 1.0 / X.n_edges
        dists = [
            sum((c / total - uniform) ** 2 for c in row) ** 0.5 if total else float("nan")
            for row in counts
        ]
    else:
        g1 = edge_graph(X).graph
        trace = evolve_exact(g1, Distribution.point_mass(g1.n, ns.start), ns.steps)
        dists = list(trace.distances)
    out.write("step,distance,alpha_power,ok\n")
    for i, d in enumerate(dists):
        if ns.alpha is not None:
            power = ns.alpha**i
            ok = "true" if d <= power + ns.slack else "false"
            out.write(f"{i},{d!r},{power!r},{ok}\n")
        else:
            out.write(f"{i},{d!r},,\n")
    return 0


def _cmd_verify_theorem(ns, out, err) -> int:
    X, inputs = _load(ns)
    results: dict = {}

    def finish(status: str) -> int:
        _emit(_report(ns, inputs, results, status), out)
        return _exit_code(status, ns.strict)

    profile = degree_profile(X)
    if profile.regular is None:
        results["reason"] = "complex is not (k0, k1)-regular"
        return finish(NOT_APPLICABLE)
    k0, k1 = profile.regular
    results["degrees"] = {"k0": k0, "k1": k1}
    if k1 == 0:
        results["reason"] = "no triangles; the edge walk has no moves"
        return finish(NOT_APPLICABLE)

    lambda2 = normalized_spectrum(underlying_graph(X), ns.tol).lambda2
    results["lambda2_g0"] = lambda2
    if lambda2 >= 0.5:
        results["reason"] = "spectral gap of the underlying graph is at most 1/2"
        return finish(NOT_APPLICABLE)

    try:
        cert = certify_exact(X, max_bits=ns.max_bits)
    except DegenerateComplexError as exc:
        results["reason"] = str(exc)
        return finish(NOT_APPLICABLE)
    results["certificate"] = _jsonable(cert)
    results["rate_bound"] = mixing_rate_bound(cert.epsilon_cosystolic, lambda2)

    audit = rapid_mixing_audit(X, cert, ns.steps, slack=ns.slack)
    g1 = edge_graph(X).graph
    results["edge_graph"] = {
        "n": g1.n,
        "k": g1.regular_k,
        "lambda_max_nontrivial": audit.edge_graph_lambda,
    }
    d0 = audit.max_distances[0] if audit.max_distances else None
    decay_ok = None
    if audit.applicable and d0 is not None:
        lam = audit.edge_graph_lambda
        decay_ok = all(
            d <= lam**i * d0 + ns.slack for i, d in enumerate(audit.max_distances)
        )
    results["walk"] = {
        "steps": ns.steps,
        "max_distances": list(audit.max_distances),
        "bound_ok": list(audit.bound_ok),
        "spectral_decay_ok": decay_ok,
    }
    if not audit.applicable:
        results["reason"] = audit.reason
        return finish(NOT_APPLICABLE)
    return finish(PASS if audit.passes else FAIL)


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hdx",
        description="2-dimensional simplicial complexes: expansion certification, "
        "spectral audits, and high-order random walks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("gen", help="generate a complex document")
    gsub = p.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("complete", help="complete complex on n vertices")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(func=_cmd_gen)
    g = gsub.add_parser("random", help="full 1-skeleton, random triangles")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(func=_cmd_gen)

    p = sub.add_parser("validate", help="check closure and incidence consistency")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("spectrum", help="normalized adjacency spectrum")
    p.add_argument("file")
    p.add_argument("--graph", choices=("g0", "g1"), default="g0")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("cheeger", help="exact normalized Cheeger constant")
    p.add_argument("file")
    p.add_argument("--graph", choices=("g0", "g1"), required=True)
    p.set_defaults(func=_cmd_cheeger)

    p = sub.add_parser("cocycles", help="cocycle and coboundary space bases")
    p.add_argument("file")
    p.add_argument("--dim", type=int, choices=(0, 1), required=True)
    p.set_defaults(func=_cmd_cocycles)

    p = sub.add_parser("certify", help="exact expansion certificate")
    p.add_argument("file")
    p.add_argument("--max-bits", type=int, default=24)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("audit", help="check the supporting inequalities on one complex")
    p.add_argument("file")
    p.add_argument(
        "--lemma",
        choices=("outgoing", "large-cuts", "distance", "local-views", "sum", "all"),
        required=True,
    )
    p.add_argument("--max-bits", type=int, default=24)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--slack", type=float, default=1e-9)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("walk", help="edge-walk trace (exact) or path ensemble (CSV)")
    p.add_argument("file")
    p.add_argument("--start", type=int, required=True, help="start edge index")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact evolution (default)")
    mode.add_argument("--paths", type=int, default=None, help="Monte Carlo path count")
    p.add_argument("--alpha", type=float, default=None, help="rate bound to compare against")
    p.add_argument("--slack", type=float, default=1e-9)
    p.set_defaults(func=_cmd_walk)

    p = sub.add_parser(
        "verify-theorem",
        help="degree check, spectrum, certificate, rate bound, and walk audit",
    )
    p.add_argument("file")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--max-bits", type=int, default=24)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--slack", type=float, default=1e-9)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=_cmd_verify_theorem)

    return parser


def _check_threads_env(err: TextIO) -> bool:
    value = os.environ.get("HDX_THREADS")
    if value is None:
        return True
    try:
        threads = int(value)
    except ValueError:
        print(f"hdx: HDX_THREADS must be a non-negative integer, got {value!r}", file=err)
        return False
    if threads < 0:
        print(f"hdx: HDX_THREADS must be a non-negative integer, got {threads}", file=err)
        return False
    # Current engines are single-threaded, which satisfies any cap.
    return True


def run(argv=None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    if not _check_threads_env(err):
        return 2
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return ns.func(ns, out, err)
    except CapacityError as exc:
        print(f"hdx: capacity error: {exc}", file=err)
        return 3
    except HdxError as exc:
        print(f"hdx: {exc}", file=err)
        return 2
    except OSError as exc:
        print(f"hdx: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
