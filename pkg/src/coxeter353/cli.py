"""Command-line interface: classification tables, kernel reports and oracle verification."""

from __future__ import annotations

import argparse
import json
import sys

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _q_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxeter353", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classification table for all primes up to --pmax")
    c.add_argument("--pmax", type=int, required=True)
    c.add_argument("--format", choices=("tsv", "csv", "json", "markdown"), default="tsv")
    c.add_argument("--ascii", action="store_true", help="ASCII aliases for symbols and group names")
    c.add_argument("--threads", type=int, default=None, help="worker processes (default: $COXETER353_THREADS or 1)")
    c.add_argument("--diff-paper", action="store_true", help="compare with the bundled reference tables")

    r = sub.add_parser("report", help="statistics and geometry of one kernel")
    r.add_argument("--p", type=int, required=True)
    r.add_argument("--trace", type=int, choices=(1, 2), default=1)
    r.add_argument("--root", type=int, choices=(1, 2), default=1)
    r.add_argument("--format", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", help="cross-check against the brute-force oracle")
    v.add_argument("--q", type=_q_list, required=True, help="comma-separated list from 9,11,16,19,25,29")
    v.add_argument("--allow-slow", action="store_true", help="permit q=29")
    return parser


def cmd_classify(args, out) -> int:
    from .reports import classify_records, diff_reference, render, thread_count, unexpected

    if args.pmax < 2:
        print("error: --pmax must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        threads = thread_count() if args.threads is None else args.threads
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    records = classify_records(args.pmax, threads)
    out.write(render(records, args.format, args.ascii))
    if not args.diff_paper:
        return EXIT_OK
    found, notes = diff_reference(records)
    bad = unexpected(found)
    for d in found:
        print(f"{'UNEXPECTED' if d in bad else 'known'} {d}", file=sys.stderr)
    for n in notes:
        print(f"note {n}", file=sys.stderr)
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_report(args, out) -> int:
    from .classifier import is_prime
    from .kernel_report import kernel_report, render_text

    if not is_prime(args.p):
        print(f"error: {args.p} is not prime", file=sys.stderr)
        return EXIT_USAGE
    try:
        rep = kernel_report(args.p, args.trace, args.root)
    except KeyError as exc:
        print(f"error: unknown kernel selector: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        out.write(json.dumps(rep, ensure_ascii=False, indent=1) + "\n")
    else:
        out.write(render_text(rep))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from .oracle import SLOW_Q, SUPPORTED_Q
    from .verification import complement_is_regular, field_growth_report, verify_q

    qs = args.q
    bad = [q for q in qs if q not in SUPPORTED_Q]
    if bad:
        print(f"error: unsupported q {bad}; choose from {list(SUPPORTED_Q)}", file=sys.stderr)
        return EXIT_USAGE
    slow = [q for q in qs if q in SLOW_Q and not args.allow_slow]
    if slow:
        print(f"error: q={slow} requires --allow-slow", file=sys.stderr)
        return EXIT_USAGE
    ok = True
    for q in qs:
        res = verify_q(q, args.allow_slow)
        for c in res.checks:
            out.write(c.line() + "\n")
        if q in (11, 29):
            order, cells, regular = complement_is_regular(q)
            out.write(f"{'PASS' if regular else 'FAIL'} q={q} complement of order {order} "
                      f"permutes {cells} cells regularly\n")
            ok = ok and regular
        ok = ok and res.ok
    rep = field_growth_report()
    out.write(f"info: of {rep.kernels} kernels for p <= 251, {rep.larger_field} have a quotient field "
              f"larger than the base field; {rep.larger_field_times} of these have omega symbol x"
              f"{'' if rep.holds else f'; exceptions {list(rep.counterexamples)}'}\n")
    out.write(f"{'PASS' if ok else 'FAIL'} verify {','.join(map(str, qs)) or '(empty)'}\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handler = {"classify": cmd_classify, "report": cmd_report, "verify": cmd_verify}[args.command]
    return handler(args, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
