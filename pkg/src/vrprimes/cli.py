"""``vrprimes`` command line.

Exit codes: 0 on success, 1 for computational errors, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import warnings
from pathlib import Path
from typing import Sequence

from . import stabledim, survey
from .arith import prime_ctx
from .bernoulli import is_regular
from .errors import VRError
from .veryregular import Verdict, list_very_regular_discriminants, very_regular

CHECKPOINT_ENV = "VRPRIMES_CHECKPOINT_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _discriminant(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    return -abs(d)


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vrprimes", description="Very regular primes and stable cohomology series.")
    parser.add_argument("-v", "--verbose", action="store_true", help="progress logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("regular", "Kummer regularity of p")
    p.add_argument("p", type=_positive)

    p = add("very-regular", "decide whether p is very regular for Q(sqrt(d))")
    p.add_argument("d", type=_discriminant, help="discriminant, -8 or 8 (always imaginary)")
    p.add_argument("p", type=_positive)

    p = add("list", "|d| <= limit at which p is very regular")
    p.add_argument("--p", type=_positive, required=True)
    p.add_argument("--limit", type=_positive, required=True)

    p = add("scan", "density survey over fundamental discriminants")
    p.add_argument("--p", type=_positive, required=True)
    p.add_argument("--dmax", type=_positive, required=True)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--checkpoint", type=Path, default=None)
    p.add_argument("--out", type=str, default=None, help="record file, or - for stdout")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv", help="record format")
    p.add_argument("--inclusive", action="store_true", help="scan |d| <= dmax instead of |d| < dmax")

    p = add("table", "verdict table for the ten smallest imaginary quadratic fields")
    p.add_argument("--pmax", type=_positive, default=97)

    p = add("density", "Cohen-Lenstra product prod (1 - p^-n)")
    p.add_argument("--p", type=_positive, required=True)

    p = add("series", "Poincare series for signature (r1, r2)")
    p.add_argument("--r1", type=_positive, required=True)
    p.add_argument("--r2", type=_positive, required=True)
    p.add_argument("--maxdeg", type=_positive, required=True)

    p = add("dims", "unstable cohomology dimensions of level-p subgroups of SL_N")
    p.add_argument("--N", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--degree", type=_positive, default=1, help="degree of the number field")

    p = add("hs-check", "run the bigraded spectral sequence to E_infinity")
    p.add_argument("--maxdeg", type=_positive, required=True)

    p = add("koszul-check", "signed Euler-characteristic identity of the Koszul pairing")
    p.add_argument("--maxdeg", type=_positive, required=True)
    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(text)


def _cmd_regular(args) -> None:
    prime_ctx(args.p)
    v = is_regular(args.p)
    text = "regular" if v.ok else "irregular: " + ",".join(map(str, v.witnesses))
    _emit(args, {"p": args.p, "regular": v.ok, "witnesses": v.witnesses}, text)


def _cmd_very_regular(args) -> None:
    report = very_regular(args.d, prime_ctx(args.p))
    cell = report.cell() or "not split"
    _emit(args, report.to_dict(), f"{report.verdict.value} {cell}".rstrip())


def _cmd_list(args) -> None:
    ds = list_very_regular_discriminants(args.p, args.limit)
    _emit(args, {"p": args.p, "limit": args.limit, "discriminants": ds}, json.dumps(ds))


def _default_checkpoint(args) -> Path | None:
    if args.checkpoint is not None:
        return args.checkpoint
    root = os.environ.get(CHECKPOINT_ENV)
    if not root:
        return None
    return Path(root) / f"scan-p{args.p}-dmax{args.dmax}.json"


def _cmd_scan(args) -> None:
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    to_stdout = args.out == "-"
    out = None
    if args.out and not to_stdout:
        out = args.out
    if to_stdout:
        # records on stdout, summary on stderr
        result = survey.scan(
            args.p, args.dmax, jobs=args.jobs, checkpoint_path=_default_checkpoint(args),
            strict=not args.inclusive, keep_records=True,
        )
        for rec in result.records:
            print(",".join(rec.csv_row()) if args.format == "csv" else rec.json_line())
    else:
        result = survey.scan(
            args.p, args.dmax, jobs=args.jobs, checkpoint_path=_default_checkpoint(args),
            out=out, fmt=args.format, strict=not args.inclusive, keep_records=False,
        )
    text = (
        f"p={result.p} dmax={result.dmax} split={result.split_count} "
        f"very_regular={result.vr_count} percentage={result.percentage}%"
    )
    if to_stdout:
        print(json.dumps(result.to_dict()) if args.json else text, file=sys.stderr)
    else:
        _emit(args, result.to_dict(), text)


def _cmd_table(args) -> None:
    table = survey.emit_table(args.pmax)
    if args.json:
        print(json.dumps(table.to_json(), ensure_ascii=False))
    else:
        sys.stdout.write(table.to_text())


def _cmd_density(args) -> None:
    value = survey.density_prediction(args.p)
    _emit(args, {"p": args.p, "density": value}, f"{value:.6f}")


def _cmd_series(args) -> None:
    report = stabledim.series_report(args.r1, args.r2, args.maxdeg)
    text = " + ".join(f"{c}q^{n}" for n, c in enumerate(report["coefficients"]) if c)
    _emit(args, report, text)


def _cmd_dims(args) -> None:
    est = stabledim.unstable_hk_asymptotic(args.N, args.k, args.degree)
    payload = est.to_dict()
    value = est.exact
    if args.k == 2 and args.degree == 1:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            value = stabledim.unstable_h2_dim(args.N)
        payload["h2_dim"] = value
        payload["stable_range_warning"] = bool(caught)
        if caught and not args.json:
            print(f"warning: {caught[0].message}", file=sys.stderr)
    _emit(args, payload, str(value))


def _cmd_hs_check(args) -> None:
    if args.maxdeg > 40:
        raise UsageError("--maxdeg must be at most 40")
    report = stabledim.hs_degeneration_check(args.maxdeg)
    text = "E_inf dims: " + " ".join(map(str, report.einf_dims)) + (
        "\nmatches L[x5, x9, ...]" if report.matches else "\nMISMATCH"
    )
    _emit(args, report.to_dict(), text)
    if not report.matches:
        raise VRError("E_infinity differs from the expected exterior algebra")


def _cmd_koszul_check(args) -> None:
    if args.maxdeg > 64:
        raise UsageError("--maxdeg must be at most 64")
    ok = stabledim.koszul_series_identity(args.maxdeg)
    _emit(args, {"D": args.maxdeg, "holds": ok, "conditional": True}, "true" if ok else "false")
    if not ok:
        raise VRError("Koszul series identity fails")


COMMANDS = {
    "regular": _cmd_regular,
    "very-regular": _cmd_very_regular,
    "list": _cmd_list,
    "scan": _cmd_scan,
    "table": _cmd_table,
    "density": _cmd_density,
    "series": _cmd_series,
    "dims": _cmd_dims,
    "hs-check": _cmd_hs_check,
    "koszul-check": _cmd_koszul_check,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"vrprimes {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (VRError, ValueError) as exc:
        print(f"vrprimes {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
