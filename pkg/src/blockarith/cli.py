"""Command-line front end: every library operation as a subcommand.

Exit codes: 0 success (findings, including violations, are data); 2 argument
or precondition errors; 3 an undecided conjecture verdict; 4 resource or
memory budget exceeded.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

from . import __version__
from .abctriples import (
    PrecisionPolicy,
    check_baker,
    check_ls,
    enumerate_triples,
    lemma_product_gap,
    make_triple,
    theorem91_chain,
)
from .arith import is_prime, stirling2
from .blocks import block_stats, lambda_m
from .config import DEFAULT_SEED
from .errors import BudgetError, OutOfTableError, ValidationError
from .ewpairs import ew_family, find_ew_pairs
from .report import (
    build_report,
    load_checkpoint,
    render_csv,
    render_json,
    save_checkpoint,
    write_output,
)
from .scans import (
    ALL_INEQUALITIES,
    ScanSpec,
    band_plan,
    erdos_gcd_bound,
    finalize_records,
    hanson_check,
    khodzaev_threshold,
    run_band,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNDECIDED = 3
EXIT_BUDGET = 4

VERIFY_SUITES = ("erdos-gcd", "hanson", "stirling", "khodzaev")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=1, help="worker processes for scans")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="factorization seed (echoed in reports)")
    common.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")
    common.add_argument("--checkpoint", type=Path, default=None, help="scan checkpoint file")
    common.add_argument("--checkpoint-every", type=int, default=1, metavar="BANDS",
                        help="k-bands between checkpoint writes")

    parser = argparse.ArgumentParser(prog="blockarith", description=__doc__, allow_abbrev=False)
    parser.add_argument("--version", action="version", version=f"blockarith {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common], help="block functions of one (n, k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, action="append", default=[], help="powerfree modulus (repeatable)")

    p = sub.add_parser("scan", parents=[common], help="enumerate inequality exceptions")
    p.add_argument("--ineq", choices=ALL_INEQUALITIES, required=True)
    p.add_argument("--kmin", type=int, default=3)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--nmin", type=int, default=1)

    p = sub.add_parser("ew", parents=[common], help="same-radical pair search")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max", type=int, required=True, dest="n2max")

    p = sub.add_parser("abc", help="abc triple operations", allow_abbrev=False)
    abc_sub = p.add_subparsers(dest="abc_command", required=True)
    q = abc_sub.add_parser("check", parents=[common], help="certify one triple", allow_abbrev=False)
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--c", type=int, required=True)
    q.add_argument("--prec-cap", type=int, default=4096, help="interval precision cap in bits")
    q = abc_sub.add_parser("enumerate", parents=[common], help="triples above a quality floor", allow_abbrev=False)
    q.add_argument("--cmax", type=int, required=True)
    q.add_argument("--quality", default="1", help="exact rational quality floor, e.g. 1 or 1.4")

    p = sub.add_parser("lemma", parents=[common], help="even/odd product gap at (x, k)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="identity suites")
    p.add_argument("--suite", choices=VERIFY_SUITES, required=True)
    p.add_argument("--limit", type=int, required=True)

    p = sub.add_parser("lambda", parents=[common], help="windowed single-integer powerfree maximum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    return parser


# ---------------------------------------------------------------------------
# subcommand handlers: return (parameters, verdict, findings, exit_code, csv_rows)


def _cmd_stats(args):
    moduli = tuple(sorted(set(args.m)))
    stats = block_stats(args.n, args.k, moduli)
    params = {"n": args.n, "k": args.k, "m": list(moduli)}
    findings = {
        "n": stats.n,
        "k": stats.k,
        "greatest_prime": stats.greatest_prime,
        "omega": stats.omega,
        "radical": stats.radical,
        "powerfree": {str(m): stats.powerfree[m] for m in moduli},
    }
    return params, "ok", findings, EXIT_OK, None


def _cmd_scan(args):
    spec = ScanSpec(
        inequality_id=args.ineq,
        kmin=args.kmin,
        kmax=args.kmax,
        nmax=args.nmax,
        nmin=args.nmin,
        workers=args.workers,
    )
    params = {
        "ineq": spec.inequality_id,
        "kmin": spec.kmin,
        "kmax": spec.kmax,
        "nmin": spec.nmin,
        "nmax": spec.nmax,
    }
    bands = band_plan(spec)
    triples: list[tuple[int, int, int]] = []
    done_k = spec.kmin - 1
    if args.checkpoint is not None:
        loaded = load_checkpoint(args.checkpoint, params)
        if loaded is not None:
            done_k, triples = loaded[0], list(loaded[1])
    pending = [(lo, hi) for lo, hi in bands if hi > done_k]
    if spec.workers == 1:
        band_results = (run_band(spec, lo, hi) for lo, hi in pending)
    else:
        from concurrent.futures import ProcessPoolExecutor

        from .scans import _run_band_job

        fields = {
            "inequality_id": spec.inequality_id,
            "kmin": spec.kmin,
            "kmax": spec.kmax,
            "nmax": spec.nmax,
            "nmin": spec.nmin,
        }
        pool = ProcessPoolExecutor(max_workers=spec.workers)
        band_results = pool.map(_run_band_job, [(fields, lo, hi) for lo, hi in pending])
    for i, ((lo, hi), result) in enumerate(zip(pending, band_results)):
        triples.extend(result)
        done_k = hi
        if args.checkpoint is not None and (i + 1) % max(1, args.checkpoint_every) == 0:
            save_checkpoint(args.checkpoint, params, done_k, triples)
    if spec.workers > 1:
        pool.shutdown()
    if args.checkpoint is not None:
        save_checkpoint(args.checkpoint, params, done_k, triples)
    records = finalize_records(spec, triples)
    rows = [
        {
            "inequality": r.inequality_id,
            "k": r.k,
            "n": r.n,
            "lhs": r.lhs,
            "rhs_num": r.rhs.numerator,
            "rhs_den": r.rhs.denominator,
            "domain_ok": r.domain_ok,
        }
        for r in records
    ]
    verdict = "exceptions-found" if rows else "no-exceptions"
    findings = {"count": len(rows), "records": rows}
    return params, verdict, findings, EXIT_OK, rows


def _cmd_ew(args):
    params = {"k": args.k, "max": args.n2max}
    pairs = find_ew_pairs(args.k, args.n2max)
    entries = []
    counterexample = False
    for p in pairs:
        entry = {
            "n1": p.n1,
            "n2": p.n2,
            "k": p.k,
            "witnesses": [list(w) for w in p.witnesses],
        }
        if p.k >= 3:
            chain = theorem91_chain(p.n1, p.n2)
            entry["chain"] = {
                "identity_ok": chain.identity_ok,
                "radicals_equal": chain.radicals_equal,
                "radical_divides_gap": chain.radical_divides_gap,
                "contradiction": chain.contradiction,
            }
            if chain.radicals_equal and chain.radical_divides_gap:
                counterexample = True
        entries.append(entry)
    if not pairs:
        verdict = "no pairs in range"
    elif counterexample:
        # a genuine k >= 3 pair refutes the explicit conjecture bound
        verdict = "conjecture-counterexample-candidate"
    else:
        verdict = "pairs-found"
    findings = {"count": len(entries), "pairs": entries}
    rows = [
        {
            "k": e["k"],
            "n1": e["n1"],
            "n2": e["n2"],
            "witnesses": ";".join(f"{i}:{r1}:{r2}" for i, r1, r2 in map(tuple, e["witnesses"])),
        }
        for e in entries
    ]
    return params, verdict, findings, EXIT_OK, rows


def _triple_payload(t):
    return {
        "a": t.a,
        "b": t.b,
        "c": t.c,
        "radical": t.radical,
        "omega_abc": t.omega_abc,
        "quality": round(t.quality, 12),
        "degenerate": t.degenerate,
    }


def _cmd_abc(args):
    if args.abc_command == "check":
        params = {"a": args.a, "b": args.b, "c": args.c, "prec_cap": args.prec_cap}
        t = make_triple(args.a, args.b, args.c)
        baker = check_baker(t, PrecisionPolicy(max_bits=args.prec_cap))
        ls = check_ls(t)
        findings = dict(_triple_payload(t), ls=ls, baker=baker)
        code = EXIT_UNDECIDED if baker == "undecided" else EXIT_OK
        return params, baker, findings, code, None
    params = {"cmax": args.cmax, "quality": args.quality}
    triples = enumerate_triples(args.cmax, args.quality)
    rows = [_triple_payload(t) for t in triples]
    findings = {"count": len(rows), "triples": rows}
    verdict = "triples-found" if rows else "no-triples"
    return params, verdict, findings, EXIT_OK, rows


def _cmd_lemma(args):
    params = {"k": args.k, "x": args.x}
    g = lemma_product_gap(args.x, args.k)
    findings = {
        "k": g.k,
        "x": g.x,
        "gap": g.gap,
        "predicted_leading": g.predicted_leading,
        "ratio_num": g.ratio.numerator,
        "ratio_den": g.ratio.denominator,
    }
    return params, "ok", findings, EXIT_OK, None


def _cmd_verify(args):
    params = {"suite": args.suite, "limit": args.limit}
    if args.limit < 1:
        raise ValidationError(f"--limit must be >= 1, got {args.limit}")
    if args.suite == "erdos-gcd":
        kmax = max(2, args.limit)
        equalities = []
        for k in range(2, kmax + 1):
            g, f = erdos_gcd_bound(k)
            if g > f:
                return params, "violations-found", {"kmax": kmax, "failed_k": k}, EXIT_OK, None
            if g * (k if is_prime(k) else 1) != f:
                return params, "violations-found", {"kmax": kmax, "structure_failed_k": k}, EXIT_OK, None
            if g == f:
                equalities.append(k)
        findings = {
            "kmax": kmax,
            "le_holds": True,
            "structure_holds": True,
            "strict_version_failures": len(equalities),
            "first_strict_failures": equalities[:10],
        }
        return params, "holds", findings, EXIT_OK, None
    if args.suite == "hanson":
        rep = hanson_check(args.limit)
        findings = {
            "rmax": rep.rmax,
            "holds": rep.holds,
            "first_failure": rep.first_failure,
            "primes_checked": rep.primes_checked,
            "max_log_ratio": round(rep.max_log_ratio, 12),
            "argmax_r": rep.argmax_r,
        }
        return params, "holds" if rep.holds else "violations-found", findings, EXIT_OK, None
    if args.suite == "stirling":
        nmax = args.limit
        for n in range(nmax + 1):
            if stirling2(n, n) != 1:
                return params, "violations-found", {"nmax": nmax, "diag_failed_n": n}, EXIT_OK, None
            for k in range(n + 1, min(n + 4, nmax + 2)):
                if stirling2(n, k) != 0:
                    return params, "violations-found", {"nmax": nmax, "zero_failed": [n, k]}, EXIT_OK, None
        findings = {"nmax": nmax, "diagonal_ok": True, "above_diagonal_zero_ok": True}
        return params, "holds", findings, EXIT_OK, None
    # khodzaev: --limit is n; search up to 4 sqrt(n) windows
    n = args.limit
    kmax = max(40, 4 * math.isqrt(n))
    rep = khodzaev_threshold(n, kmax)
    findings = {
        "n": rep.n,
        "kmax": rep.kmax,
        "k": rep.k,
        "sqrt_ratio": None if rep.sqrt_ratio is None else round(rep.sqrt_ratio, 12),
    }
    return params, "found" if rep.k is not None else "none", findings, EXIT_OK, None


def _cmd_lambda(args):
    params = {"n": args.n, "k": args.k, "m": args.m}
    value = lambda_m(args.n, args.k, args.m)
    return params, "ok", {"n": args.n, "k": args.k, "m": args.m, "value": value}, EXIT_OK, None


_HANDLERS = {
    "stats": _cmd_stats,
    "scan": _cmd_scan,
    "ew": _cmd_ew,
    "abc": _cmd_abc,
    "lemma": _cmd_lemma,
    "verify": _cmd_verify,
    "lambda": _cmd_lambda,
}

_CSV_COMMANDS = {"scan": "scan", "ew": "ew", "abc": "abc-enumerate"}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    start = time.perf_counter()
    try:
        params, verdict, findings, code, rows = _HANDLERS[args.command](args)
    except (ValidationError, OutOfTableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetError, MemoryError) as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    wall = time.perf_counter() - start
    if args.fmt == "csv":
        csv_kind = _CSV_COMMANDS.get(args.command)
        if csv_kind is None or rows is None or (
            args.command == "abc" and args.abc_command != "enumerate"
        ):
            print("error: --format csv is only available for scan-type commands", file=sys.stderr)
            return EXIT_USAGE
        write_output(render_csv(csv_kind, rows), args.out)
        return code
    report = build_report(
        command=args.command if args.command != "abc" else f"abc-{args.abc_command}",
        parameters=params,
        seed=args.seed,
        verdict=verdict,
        findings=findings,
        wall_time_s=wall,
    )
    write_output(render_json(report), args.out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
