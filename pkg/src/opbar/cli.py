"""Command-line interface: ``opbar <command> [options]``.

Exit status is 0 on success, 1 on a domain or usage error and 2 when some
comparison stayed undecided at the precision cap.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Sequence

from . import asymptotics as asy
from . import exact_seq
from . import inequalities as ineq
from . import serialize as ser
from .certified_real import DEFAULT_PRECISION, MAX_PRECISION, Comparison, DomainError, compare
from .search import DEFAULT_WINDOW, PREDICATES, find_threshold, problem51_explore

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_UNDECIDED = 2

PRECISION_ENV = "OPBAR_PRECISION_BITS"
MIN_PRECISION = 128
FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = DEFAULT_PRECISION
    cache_path: Optional[Path] = None
    output_format: str = "json"

    def __post_init__(self):
        if not MIN_PRECISION <= self.precision_bits <= MAX_PRECISION:
            raise UsageError(f"precision must be within [{MIN_PRECISION}, {MAX_PRECISION}], got {self.precision_bits}")
        if self.output_format not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")


def _resolve_precision(flag: Optional[int]) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(PRECISION_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{PRECISION_ENV}={env!r} is not an integer") from None
    return DEFAULT_PRECISION


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json", help="output format (default: json)")
    common.add_argument("--cache", type=Path, default=None, metavar="PATH", help="read/write the exact-value cache file")
    common.add_argument(
        "--precision", type=int, default=None, metavar="BITS",
        help=f"working precision of printed enclosures (default {DEFAULT_PRECISION}, or ${PRECISION_ENV})",
    )  # fmt: skip

    parser = _Parser(prog="opbar", description="Exact and certified computations for the overpartition function.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def span(p):
        p.add_argument("--from", dest="lo", type=int, required=True)
        p.add_argument("--to", dest="hi", type=int, required=True)

    p = sub.add_parser("seq", parents=[common], help="exact pbar(n); CSV columns: n,value")
    span(p)
    p = sub.add_parser("bounds", parents=[common], help="B1(n) < pbar(n) < B2(n) with verdicts")
    span(p)
    p = sub.add_parser("profile", parents=[common], help="u, s, f, g, s1, s2, phi(s) per n")
    span(p)
    p = sub.add_parser("det", parents=[common], help="exact k x k Toeplitz determinants")
    p.add_argument("--k", type=int, required=True)
    span(p)
    p = sub.add_parser("threshold", parents=[common], help="empirical threshold of a predicate")
    p.add_argument("--predicate", required=True, choices=sorted(PREDICATES))
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--lo", type=int, default=None, help="default: smallest index the predicate is defined at")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--precision-cap", type=int, default=MAX_PRECISION, metavar="BITS")
    p.add_argument("--workers", type=int, default=1)
    p = sub.add_parser("problem51", parents=[common], help="empirical n(k) for k x k determinants (exploratory)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--trace", action="store_true", help="include the sign of every determinant")
    p = sub.add_parser("zuckerman", parents=[common], help="truncated Zuckerman series vs the exact value")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--terms", type=int, default=2, help="truncation N: odd k <= N are summed")
    return parser


# -- commands ------------------------------------------------------------------
#
# Each returns (payload, rows, exit_code). ``rows`` feeds CSV and text output;
# ``payload`` is the JSON document.


def _verdict(c: Comparison) -> str:
    return c.value


def cmd_seq(lo: int, hi: int, cfg: RunConfig):
    values = exact_seq.overpartition_range(lo, hi)
    rows = [{"n": lo + i, "value": str(v)} for i, v in enumerate(values)]
    return {"command": "seq", "rows": rows}, rows, EXIT_OK


def cmd_bounds(lo: int, hi: int, cfg: RunConfig):
    if lo < 1 or lo > hi:
        raise DomainError(f"need 1 <= from <= to, got {lo}..{hi}")
    rows = []
    code = EXIT_OK
    p = cfg.precision_bits
    for n in range(lo, hi + 1):
        pb = exact_seq.overpartition(n)
        lower = compare(lambda bits: asy.b1(n, bits), pb)
        upper = compare(pb, lambda bits: asy.b2(n, bits))
        if Comparison.UNDECIDED in (lower, upper):
            code = EXIT_UNDECIDED
        rows.append(
            {
                "n": n,
                "b1": ser.enclosure(asy.b1(n, p)),
                "pbar": str(pb),
                "b2": ser.enclosure(asy.b2(n, p)),
                "b1_vs_pbar": _verdict(lower),
                "pbar_vs_b2": _verdict(upper),
                "holds": lower is Comparison.LESS and upper is Comparison.LESS,
            }
        )
    return {"command": "bounds", "rows": rows}, rows, code


def cmd_profile(lo: int, hi: int, cfg: RunConfig):
    if lo < 3 or lo > hi:
        raise DomainError(f"need 3 <= from <= to, got {lo}..{hi}")
    rows = []
    for n in range(lo, hi + 1):
        bp = ineq.bound_profile(n, cfg.precision_bits)
        rows.append(
            {
                "n": n,
                "u": ser.enclosure(bp.u_enclosure()),
                "s": ser.enclosure(bp.s_enclosure()),
                "f": ser.enclosure(bp.f),
                "g": ser.enclosure(bp.g),
                "s1": ser.enclosure(bp.s1),
                "s2": ser.enclosure(bp.s2),
                "phi_of_s": ser.enclosure(bp.phi_of_s),
            }
        )
    return {"command": "profile", "rows": rows}, rows, EXIT_OK


def cmd_det(k: int, lo: int, hi: int, cfg: RunConfig):
    if lo > hi:
        raise DomainError(f"empty range {lo}..{hi}")
    rows = []
    for n in range(lo, hi + 1):
        rep = ineq.toeplitz_det(n, k)
        rows.append({"n": n, "k": k, "det": str(rep.det), "sign": rep.sign, "minor_signs": list(rep.minor_signs)})
    return {"command": "det", "rows": rows}, rows, EXIT_OK


def threshold_payload(res) -> dict[str, Any]:
    return {
        "predicate_id": res.predicate_id,
        "n_scanned": [res.lo, res.hi],
        "minimal_n": res.minimal_n,
        "violations": list(res.violations),
        "undecided": list(res.undecided),
        "sharp_within_range": res.sharp_within_range,
        "window": res.window,
        "precision_cap": res.precision_cap,
        "scope": "empirical over n_scanned only",
    }


def cmd_threshold(predicate: str, lo: Optional[int], hi: int, window: int, cap: int, workers: int, cfg: RunConfig):
    if lo is None:
        lo = PREDICATES[predicate].min_index
    res = find_threshold(predicate, lo, hi, precision_cap=cap, window=window, workers=workers)
    payload = threshold_payload(res)
    return payload, [payload], EXIT_UNDECIDED if res.undecided else EXIT_OK


def problem51_payload(res) -> dict[str, Any]:
    out = {
        "k": res.k,
        "n_scanned": [res.lo, res.hi],
        "empirical_n_k": res.empirical_n_k,
        "violations": list(res.violations),
        "window": res.window,
        "label": "exploratory" if res.exploratory else "regression anchor",
    }
    if res.det_trace:
        out["det_trace"] = list(res.det_trace)
    return out


def cmd_problem51(k: int, hi: int, window: int, trace: bool, cfg: RunConfig):
    payload = problem51_payload(problem51_explore(k, hi, window=window, trace=trace))
    return payload, [payload], EXIT_OK


def cmd_zuckerman(n: int, terms: int, cfg: RunConfig):
    est = asy.zuckerman_estimate(n, terms, cfg.precision_bits)
    exact = exact_seq.overpartition(n)
    payload = {
        "n": n,
        "terms_used": terms,
        "value": ser.enclosure(est.value),
        "error_bound": ser.enclosure(est.error_bound),
        "imaginary": ser.enclosure(est.imaginary),
        "exact": str(exact),
        "exact_within_bound": est.contains(exact),
    }
    return payload, [payload], EXIT_OK


def _dispatch(args, cfg: RunConfig):
    c = args.command
    if c == "seq":
        return cmd_seq(args.lo, args.hi, cfg)
    if c == "bounds":
        return cmd_bounds(args.lo, args.hi, cfg)
    if c == "profile":
        return cmd_profile(args.lo, args.hi, cfg)
    if c == "det":
        return cmd_det(args.k, args.lo, args.hi, cfg)
    if c == "threshold":
        return cmd_threshold(args.predicate, args.lo, args.hi, args.window, args.precision_cap, args.workers, cfg)
    if c == "problem51":
        return cmd_problem51(args.k, args.hi, args.window, args.trace, cfg)
    if c == "zuckerman":
        return cmd_zuckerman(args.n, args.terms, cfg)
    raise UsageError(f"unknown command {c}")


def render(payload, rows, fmt: str) -> str:
    if fmt == "json":
        return ser.dumps(payload) + "\n"
    if fmt == "csv":
        return ser.csv_rows(rows)
    return ser.text_rows(rows)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(_resolve_precision(args.precision), args.cache, args.format)
        if cfg.cache_path is not None and cfg.cache_path.exists():
            exact_seq.set_default_cache(exact_seq.load_cache(cfg.cache_path))
        before = exact_seq.default_cache().n_max
        payload, rows, code = _dispatch(args, cfg)
        path = cfg.cache_path
        if path is not None and (exact_seq.default_cache().n_max != before or not path.exists()):
            exact_seq.save_cache(exact_seq.default_cache(), path)
    except UsageError as exc:
        print(f"opbar: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:  # DomainError and CacheFormatError are ValueErrors
        print(f"opbar: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(render(payload, rows, cfg.output_format))
    return code


if __name__ == "__main__":
    sys.exit(main())
