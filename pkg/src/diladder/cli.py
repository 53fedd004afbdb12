"""Command-line front end: verify, certify, isolate roots, discover, export.

Exit codes are uniform across subcommands: 0 when every requested check
passes, 1 when a mathematical check fails (or a discovery finds nothing),
2 on usage or input errors.  JSON output is deterministic (sorted keys, no
timestamps), so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from . import algebra, ladders, numerics, relation

DIGITS_ENV = "DILADDER_DIGITS"
_MIN_DIGITS = 20


@dataclass
class CliConfig:
    digits: int = 60
    fmt: str = "text"

    def __post_init__(self):
        if self.digits < _MIN_DIGITS:
            raise ValueError(f"--digits must be at least {_MIN_DIGITS}")

    @property
    def bits(self) -> int:
        # decimal digits carried faithfully, plus a fixed guard block
        return numerics.bits_for_digits(self.digits) + 64

    @property
    def pass_threshold(self) -> mp.mpf:
        # ten decimal digits of slack over the requested precision
        return mp.mpf(10) ** (-(self.digits - 10))


def _default_digits() -> int:
    raw = os.environ.get(DIGITS_ENV)
    if raw is None:
        return 60
    try:
        return int(raw)
    except ValueError:
        return 60


def _emit(payload, cfg: CliConfig) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _parse_poly(text: str) -> algebra.RatPoly:
    try:
        coeffs = [Fraction(part.strip()) for part in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad polynomial coefficients {text!r}: {exc}") from None
    poly = algebra.RatPoly(tuple(coeffs))
    if poly.degree < 1:
        raise ValueError("polynomial must have degree >= 1")
    return poly


def _parse_exponents(text: str) -> list[int]:
    try:
        exps = [int(part.strip()) for part in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad exponent list {text!r}: {exc}") from None
    if not exps or min(exps) < 1:
        raise ValueError("exponents must be positive integers")
    return exps


def _family_poly(family: str, n: int) -> algebra.RatPoly:
    return algebra.even_family_poly(n) if family == "even" else algebra.odd_family_poly(n)


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_root(args, cfg: CliConfig) -> int:
    if args.family:
        if args.n is None:
            return _usage_error("--family requires --n")
        poly = _family_poly(args.family, args.n)
    elif args.poly:
        poly = _parse_poly(args.poly)
    else:
        return _usage_error("root needs --family/--n or --poly")
    try:
        root = algebra.positive_root(poly, prec=cfg.bits, unit_interval=args.unit_interval)
    except algebra.NoPositiveRoot as exc:
        print(f"no positive root: {exc}", file=sys.stderr)
        return 2
    decimal = numerics.to_decimal(root.value(cfg.bits), cfg.digits)
    if cfg.fmt == "json":
        payload = root.to_json()
        payload["decimal"] = decimal
        payload["digits"] = cfg.digits
        _emit(payload, cfg)
    else:
        print(f"poly      {poly}")
        print(f"root      {decimal}")
        print(f"interval  [{root.lo}, {root.hi}]")
    return 0


def _verify_payload(name, ladder, cfg: CliConfig, note=None, citation=None):
    res = ladders.residual(ladder, cfg.bits)
    passed = bool(abs(res) < cfg.pass_threshold)
    payload = {
        "name": name,
        "digits": cfg.digits,
        "residual": mp.nstr(abs(res), 8),
        "pass": passed,
    }
    metadata = {}
    if citation:
        metadata["citation"] = citation
    if note:
        metadata["note"] = note
    if metadata:
        payload["metadata"] = metadata
    return payload, passed


def _cmd_verify(args, cfg: CliConfig) -> int:
    if args.name:
        try:
            entry = ladders.corpus_entry(args.name)
        except KeyError:
            known = ", ".join(e.name for e in ladders.corpus())
            return _usage_error(f"unknown ladder {args.name!r}; corpus has: {known}")
        payload, passed = _verify_payload(
            entry.name, entry.ladder, cfg, note=entry.note, citation=entry.citation
        )
    elif args.family:
        if args.n is None:
            return _usage_error("--family requires --n")
        ladder = (
            ladders.even_family_ladder(args.n)
            if args.family == "even"
            else ladders.odd_family_ladder(args.n)
        )
        payload, passed = _verify_payload(ladder.name, ladder, cfg)
    else:
        return _usage_error("verify needs --name or --family/--n")
    if cfg.fmt == "json":
        _emit(payload, cfg)
    else:
        verdict = "PASS" if passed else "FAIL"
        print(f"{payload['name']}: |residual| = {payload['residual']}  {verdict}")
        if payload.get("metadata", {}).get("note"):
            print(f"note: {payload['metadata']['note']}")
    return 0 if passed else 1


def _cmd_verify_exact(args, cfg: CliConfig) -> int:
    if args.n is None or not args.family:
        return _usage_error("verify-exact needs --family and --n")
    steps = algebra.verify_step_identities(args.n, args.family)
    cyclo = algebra.verify_cyclotomic(args.n, args.family)
    all_ok = steps.all_passed and cyclo.all_passed
    if cfg.fmt == "json":
        _emit({"step_identities": steps.to_json(), "cyclotomic": cyclo.to_json()}, cfg)
    else:
        for report in (steps, cyclo):
            for check in report.checks:
                state = "CERTIFIED" if check.passed else "FAILED"
                print(f"{state}  {check.name}")
    return 0 if all_ok else 1


def _cmd_discover(args, cfg: CliConfig) -> int:
    try:
        poly = _parse_poly(args.poly)
        exps = _parse_exponents(args.exponents)
    except ValueError as exc:
        return _usage_error(str(exc))
    try:
        outcome = relation.discover_detailed(
            poly, exps, cfg.bits, max_norm=args.max_norm
        )
    except relation.PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}; raise --digits", file=sys.stderr)
        return 2
    except (algebra.NoPositiveRoot, ValueError) as exc:
        return _usage_error(str(exc))
    if outcome.ladder is None:
        bound = mp.nstr(outcome.exclusion.bound, 6)
        if cfg.fmt == "json":
            _emit({"found": False, "exclusion": outcome.exclusion.to_json()}, cfg)
        else:
            print(f"NOT FOUND (no relation with coefficients up to {bound})")
        return 1
    payload = ladders.ladder_to_json(outcome.ladder)
    payload["relation"] = outcome.relation.to_json()
    if cfg.fmt == "json":
        _emit(payload, cfg)
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def _print_residual_verdict(label: str, res_abs, cfg: CliConfig, extra=None) -> int:
    passed = bool(res_abs < cfg.pass_threshold)
    if cfg.fmt == "json":
        payload = {
            "check": label,
            "residual": mp.nstr(res_abs, 8),
            "digits": cfg.digits,
            "pass": passed,
        }
        if extra:
            payload.update(extra)
        _emit(payload, cfg)
    else:
        print(f"{label}: |residual| = {mp.nstr(res_abs, 8)}  {'PASS' if passed else 'FAIL'}")
        if extra:
            for line in extra.get("branch_notes", []):
                print(f"  {line}")
    return 0 if passed else 1


def _cmd_special(args, cfg: CliConfig) -> int:
    if args.relation == "khoi":
        res = ladders.verify_khoi(cfg.bits)
        return _print_residual_verdict("khoi", abs(res), cfg)
    if args.relation == "lima":
        if args.z is None:
            return _usage_error("lima requires --z")
        try:
            z = Fraction(args.z)
        except (ValueError, ZeroDivisionError):
            return _usage_error(f"bad --z value {args.z!r}")
        if not 0 < z < 1:
            return _usage_error("--z must satisfy 0 < z < 1")
        res = ladders.verify_lima(z, cfg.bits)
        return _print_residual_verdict(f"lima(z={args.z})", abs(res), cfg)
    # conjectural complex relation: report both components and the branches
    report = ladders.verify_conjecture(cfg.bits)
    worst = max(abs(report.re_residual), abs(report.im_residual))
    extra = {
        "re_residual": mp.nstr(report.re_residual, 8),
        "im_residual": mp.nstr(report.im_residual, 8),
        "branch_notes": list(report.branch_notes),
    }
    return _print_residual_verdict("conjecture", worst, cfg, extra=extra)


def _cmd_corpus(args, cfg: CliConfig) -> int:
    entries = ladders.corpus()
    if args.action == "list":
        if cfg.fmt == "json":
            _emit(ladders.corpus_to_json(entries), cfg)
        else:
            print(f"{'name':24s} {'index':>6s} {'degree':>7s} {'d2':>8s}")
            for e in entries:
                d2 = dict(e.ladder.zeta_terms).get(2, Fraction(0))
                print(
                    f"{e.name:24s} {e.ladder.index:6d} "
                    f"{e.ladder.base.poly.degree:7d} {str(d2):>8s}"
                )
        return 0
    out = args.out
    if not out:
        return _usage_error("export requires --out FILE")
    try:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(ladders.corpus_to_json(entries), fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        return _usage_error(f"cannot write {out!r}: {exc}")
    print(f"wrote {len(entries)} ladders to {out}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    # shared flags are accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--digits",
        type=int,
        default=argparse.SUPPRESS,
        help=f"decimal working precision (default 60, env {DIGITS_ENV})",
    )
    common.add_argument(
        "--format",
        choices=("text", "json"),
        default=argparse.SUPPRESS,
        dest="fmt",
        help="output format (default text)",
    )
    parser = argparse.ArgumentParser(
        prog="diladder",
        description="dilogarithm ladders: verification, certification, discovery",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p_root = add_parser("root", help="isolate the positive root of a base polynomial")
    p_root.add_argument("--family", choices=("even", "odd"))
    p_root.add_argument("--n", type=int)
    p_root.add_argument("--poly", help="comma-separated ascending rational coefficients")
    p_root.add_argument(
        "--unit-interval",
        action="store_true",
        help="only accept a root strictly inside (0, 1)",
    )

    p_verify = add_parser("verify", help="numerically verify a ladder residual")
    p_verify.add_argument("--name", help="corpus ladder name")
    p_verify.add_argument("--family", choices=("even", "odd"))
    p_verify.add_argument("--n", type=int)

    p_exact = add_parser(
        "verify-exact", help="exact quotient-ring certification of a family member"
    )
    p_exact.add_argument("--family", choices=("even", "odd"), required=True)
    p_exact.add_argument("--n", type=int, required=True)

    p_disc = add_parser("discover", help="search for a ladder with PSLQ")
    p_disc.add_argument("--poly", required=True)
    p_disc.add_argument("--exponents", required=True, help="comma-separated exponents")
    p_disc.add_argument("--max-norm", type=int, default=10**6)

    p_special = add_parser("special", help="golden-ratio special relations")
    p_special.add_argument("relation", choices=("khoi", "lima", "conjecture"))
    p_special.add_argument("--z", help="argument for the duplication identity")

    p_corpus = add_parser("corpus", help="list or export the ladder corpus")
    p_corpus.add_argument("action", choices=("list", "export"))
    p_corpus.add_argument("--out", help="output file for export")

    return parser


_DISPATCH = {
    "root": _cmd_root,
    "verify": _cmd_verify,
    "verify-exact": _cmd_verify_exact,
    "discover": _cmd_discover,
    "special": _cmd_special,
    "corpus": _cmd_corpus,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CliConfig(
            digits=getattr(args, "digits", _default_digits()),
            fmt=getattr(args, "fmt", "text"),
        )
    except ValueError as exc:
        return _usage_error(str(exc))
    try:
        return _DISPATCH[args.command](args, cfg)
    except ValueError as exc:
        return _usage_error(str(exc))


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
