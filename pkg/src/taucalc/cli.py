"""Command-line front end.

Verbs:
  compute         one psi-bracket
  compute-kappa   one mixed psi/kappa integral
  npoint          dump an n-point function (or its merged special form)
  verify          run a verification sweep, emit JSON reports + summary
  denom           denominator profiles D(g, n) / script-D(g)
  monotone        long-running monotonicity modes with progress streaming
  cache           export / import the bracket memo table

Exit codes: 0 success or all-pass, 1 any verification failure, 2 usage
errors.  All rationals print as num/den.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import brackets as br
from . import denominators as dn
from . import identities as ids
from . import monotone as mono
from .npoint import merged_series, npoint_series
from .reduction import kappa_to_psi
from .report import Report, reports_to_json, summary_line

VERIFY_IDS = (
    "eq3", "eq4", "eq5", "eq6", "eq7", "eq8",
    "c32", "c33", "c34", "c35",
    "decomp", "n1sums", "c41", "c51", "c52", "c53", "c54",
)


def _parse_int_list(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="tau", description=__doc__,
                                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--cache", metavar="PATH", default=None,
                       help="warm-start from this cache file and save back on exit")
        p.add_argument("--no-timing", action="store_true",
                       help="omit elapsed-time fields from reports")

    p = sub.add_parser("compute", help="one bracket <tau_{d_1}..tau_{d_n}>_g")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--d", type=_parse_int_list, default=())
    common(p)

    p = sub.add_parser("compute-kappa", help="one mixed integral <tau_d kappa_a>_{g,n}")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_parse_int_list, required=True)
    p.add_argument("--d", type=_parse_int_list, default=None)
    common(p)

    p = sub.add_parser("npoint", help="dump n-point function coefficients")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gmax", type=int, required=True)
    p.add_argument("--special", action="store_true",
                   help="dump the merged (n+2)-point series G(y,-y,x_1..x_n) instead")
    common(p)

    p = sub.add_parser("verify", help="verification sweeps")
    p.add_argument("identity", choices=VERIFY_IDS)
    p.add_argument("--gmax", type=int, default=None)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    common(p)

    p = sub.add_parser("denom", help="denominator profile D(g,n) or script-D(g)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    common(p)

    p = sub.add_parser("monotone", help="long-running monotonicity modes")
    p.add_argument("--lambda", dest="lam", choices=("none", "top"), default="none")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--gmax", type=int, required=True)
    common(p)

    p = sub.add_parser("cache", help="export or import the bracket table")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--export", metavar="PATH")
    group.add_argument("--import", dest="import_path", metavar="PATH")
    p.add_argument("--verify-cache", action="store_true",
                   help="recompute every imported entry and reject on mismatch")
    common(p)

    return top


def _emit_reports(reports: list[Report], timing: bool) -> int:
    print(reports_to_json(reports, timing=timing))
    print(summary_line(reports))
    return 0 if all(r.passed for r in reports) else 1


_DEFAULT_SWEEP = {
    # (g_max, n_max) defaults per verify token
    "eq3": (6, 4), "eq4": (6, 4), "eq5": (6, 4), "eq6": (5, 4), "eq7": (4, 3),
    "eq8": (6, 4), "c32": (4, 3), "c33": (4, 3), "c34": (4, 3), "c35": (4, 3),
    "decomp": (5, 4), "n1sums": (10, 1), "c41": (3, 1), "c51": (6, 4),
    "c52": (3, 2), "c53": (3, 2), "c54": (4, 4),
}


def _run_verify(args) -> int:
    token = args.identity
    g_def, n_def = _DEFAULT_SWEEP[token]
    g_max = args.gmax if args.gmax is not None else g_def
    n_max = args.nmax if args.nmax is not None else n_def
    timing = not args.no_timing
    jobs = max(1, args.jobs)

    if token in ("eq3", "eq4", "eq5", "eq6", "eq7", "eq8"):
        limits = ids.SweepLimits(g_max=g_max, n_max=n_max,
                                 k_span=4 if token in ("eq6", "eq7") else 3)
        reports = ids.run_sweep(token, limits, jobs=jobs)
    elif token in ("c32", "c33", "c34", "c35"):
        limits = ids.SweepLimits(g_max=g_max, n_max=n_max, k_span=2)
        reports = ids.run_sweep(token + "a", limits, jobs=jobs)
        reports += ids.run_sweep(token + "b", limits, jobs=jobs)
    elif token == "decomp":
        reports = []
        for g in range(2, g_max + 1):
            for p in ids.instances("eq3", ids.SweepLimits(g_max=g_max, n_max=n_max)):
                if p["g"] == g:
                    reports.append(ids.decomposition_check(p["g"], p["d"]))
    elif token == "n1sums":
        reports = []
        for g in range(1, g_max + 1):
            reports += ids.n1_sum_reports(g)
    elif token == "c41":
        # the whole denominator-chapter block: prime-order profile plus the
        # threshold, product-divisibility and automorphism-bound corollaries
        reports = []
        for g in range(2, max(g_max, 2) + 1):
            reports.append(dn.conjecture41_check(g))
            reports.append(dn.threshold_check(g))
            reports.append(dn.compare_D_S(g))
        top = max(g_max, 2)
        for g in range(0, top + 1):
            for h in range(g, top - g + 1):
                ok = dn.divisibility_check(g, h)
                reports.append(Report(
                    id="c43", params={"g": g, "h": h},
                    lhs=Fraction(1), rhs=Fraction(1 if ok else 0),
                ))
    elif token == "c51":
        reports = []
        for g in range(0, g_max + 1):
            for n in range(1, n_max + 1):
                if 2 * g - 2 + n > 0 and 3 * g - 3 + n >= 0:
                    reports.append(mono.psi_swap_check(g, n))
        for g in range(1, g_max + 1):
            for n in range(1, n_max + 1):
                if 2 * g - 2 + n > 0 and 2 * g - 3 + n >= 0:
                    reports.append(mono.lambda_g_swap_check(g, n))
    elif token == "c52":
        reports = [
            mono.kappa_swap_check(g, n)
            for g in range(1, g_max + 1)
            for n in range(0, n_max + 1)
            if 2 * g - 2 + n > 0 and 3 * g - 3 + n >= 2
        ]
    elif token == "c53":
        reports = [
            mono.bounds_check(g, n)
            for g in range(1, g_max + 1)
            for n in range(0, n_max + 1)
            if 2 * g - 2 + n > 0 and 3 * g - 3 + n >= 0
        ]
    elif token == "c54":
        reports = [
            mono.psi_floor_check(g, n)
            for g in range(1, g_max + 1)
            for n in range(1, n_max + 1)
            if 2 * g - 2 + n > 0
        ]
    else:  # pragma: no cover
        raise AssertionError(token)
    return _emit_reports(sorted(reports, key=Report.sort_key), timing)


def _with_cache(args, body) -> int:
    path = getattr(args, "cache", None)
    if path and os.path.exists(path):
        loaded = br.cache_load(path)
        table = br.default_table()
        for key, value in loaded.items():
            table.put(key, value)
    try:
        return body()
    finally:
        if path:
            br.cache_save(br.default_table(), path)


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    try:
        if args.verb == "compute":
            return _with_cache(args, lambda: print(br.bracket(args.g, args.d)) or 0)

        if args.verb == "compute-kappa":
            d = args.d if args.d is not None else (0,) * args.n
            if len(d) != args.n:
                print(f"--d must list exactly {args.n} exponents", file=sys.stderr)
                return 2
            return _with_cache(args, lambda: print(kappa_to_psi(args.g, d, args.a)) or 0)

        if args.verb == "npoint":
            if args.special:
                series = merged_series(args.n, args.gmax)
            else:
                series = npoint_series(args.n, args.gmax)
            for line in series.dump_lines():
                print(line)
            return 0

        if args.verb == "verify":
            return _with_cache(args, lambda: _run_verify(args))

        if args.verb == "denom":
            if args.n is None:
                profile = dn.compute_script_D(args.g)
                label = f"script-D({args.g})"
            else:
                profile = dn.compute_D(args.g, args.n)
                label = f"D({args.g},{args.n})"
            print(f"{label} = {profile.value} = {profile.rendered()}")
            print(json.dumps(profile.to_dict()))
            return 0

        if args.verb == "monotone":
            timing = not args.no_timing
            if args.lam == "top":
                reports = [
                    mono.lambda_g_swap_check(g, args.n)
                    for g in range(1, args.gmax + 1)
                    if 2 * g - 2 + args.n > 0 and 2 * g - 3 + args.n >= 0
                ]
                return _emit_reports(reports, timing)
            if args.n == 2:
                report = mono.psi_swap_deep(
                    args.gmax, progress=lambda msg: print(msg, file=sys.stderr)
                )
                return _emit_reports([report], timing)
            reports = []
            for g in range(0, args.gmax + 1):
                if 2 * g - 2 + args.n > 0 and 3 * g - 3 + args.n >= 0:
                    reports.append(mono.psi_swap_check(g, args.n))
                    print(f"g={g} done", file=sys.stderr)
            return _emit_reports(reports, timing)

        if args.verb == "cache":
            def cache_body() -> int:
                if args.export:
                    count = br.cache_save(br.default_table(), args.export)
                    print(f"exported {count} entries to {args.export}")
                    return 0
                table = br.cache_load(args.import_path, verify=args.verify_cache)
                target = br.default_table()
                for key, value in table.items():
                    target.put(key, value)
                print(f"imported {len(table)} entries from {args.import_path}")
                return 0

            return _with_cache(args, cache_body)

        raise AssertionError(args.verb)  # pragma: no cover
    except (br.CacheError, ids.ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
