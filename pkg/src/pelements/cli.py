"""Command-line entry point: ``pelements <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Callable, Iterable, Sequence

from .arith import is_prime, prime_powers_upto, primes_upto
from .bounds import (
    MT_PARTS,
    check_bothcases,
    check_lemma_basep,
    check_lemma_basepbound,
    check_lemma_parity,
    check_mtbound,
    mtbound_applies,
)
from .census import count_pi_elements
from .engine import DEFAULT_AUT_CAP, DEFAULT_CAP, CapExceeded
from .exact import eb_to_float
from .expr import ExprError, bound_from_text, group_from_text
from .mp import mp_group
from .serialize import FormatError, dumps, element_to_text
from .verify import SUITES, UnknownSuite, run_suites

EXIT_FAIL, EXIT_USAGE, EXIT_CAP, EXIT_INTERNAL = 1, 2, 3, 4


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _prime(text: str) -> int:
    value = _positive(text)
    if not is_prime(value):
        raise argparse.ArgumentTypeError(f"not prime: {value}")
    return value


def _prime_list(text: str) -> list[int]:
    return [_prime(t) for t in text.split(",") if t.strip()]


# --- rendering -------------------------------------------------------------------------


def _render(data: Any, fmt: str, rows: Sequence[dict[str, Any]] | None = None) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    table = rows if rows is not None else [data]
    if fmt == "csv":
        buf = io.StringIO()
        fields = list(table[0].keys()) if table else []
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in table:
            writer.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in row.items()})
        return buf.getvalue()
    lines = []
    for row in table:
        lines.append("  ".join(f"{k}={v}" for k, v in row.items()))
    return "\n".join(lines) + "\n"


def _primes_of(args: argparse.Namespace) -> list[int]:
    primes = list(args.primes or [])
    if args.prime is not None:
        primes.insert(0, args.prime)
    if not primes:
        raise UsageError("give a prime with -p or --primes")
    return sorted(set(primes))


# --- subcommands -------------------------------------------------------------------------


def cmd_construct(args: argparse.Namespace) -> tuple[str, int]:
    G = group_from_text(args.expr, args.cap)
    text = dumps(G)
    if args.format == "json":
        return _render({"group": G.label, "order": G.order, "generators": text}, "json"), 0
    if args.format == "csv":
        return _render({"group": G.label, "order": G.order}, "csv"), 0
    return text, 0


def cmd_census(args: argparse.Namespace) -> tuple[str, int]:
    G = group_from_text(args.expr, args.cap)
    data = {"group": G.label, **count_pi_elements(G, _primes_of(args)).to_json()}
    if args.format == "csv":
        data = {k: v for k, v in data.items() if k != "histogram"}
    return _render(data, args.format), 0


def cmd_bounds(args: argparse.Namespace) -> tuple[str, int]:
    value = bound_from_text(args.expr)
    approx = eb_to_float(value)
    data = {"expr": args.expr, "exact": str(value), "approx": approx.value}
    return _render(data, args.format), 0


def cmd_mp(args: argparse.Namespace) -> tuple[str, int]:
    G = group_from_text(args.expr, args.cap)
    out = []
    for p in _primes_of(args):
        report = mp_group(G, p, cap=args.cap, aut_cap=args.aut_cap)
        data = report.to_json()
        data["group"] = G.label
        for f_json, f_rep in zip(data["factors"], report.factors):
            for w_json in f_json["witnesses"]:
                w_json["element"] = _witness_text(f_rep, w_json["element"])
        out.append(data)
    if args.format == "json":
        return _render(out[0] if len(out) == 1 else out, "json"), 0
    rows = [{"group": d["group"], "p": d["p"], "mp": d["mp"]} for d in out]
    return _render(None, args.format, rows), 0


def _witness_text(factor: Any, index: int) -> str:
    """The conjugating element s of the witness x_s, in the generator-file notation."""
    group = factor.group
    if group is not None:
        try:
            return element_to_text(group.elements[index])
        except FormatError:
            pass
    return f"#{index}"


LEMMAS: dict[str, Callable[[int | None], Iterable[dict[str, Any]]]] = {}


def _lemma(name: str):
    def register(fn: Callable[[int | None], Iterable[dict[str, Any]]]):
        LEMMAS[name] = fn
        return fn

    return register


@_lemma("basep")
def _rows_basep(limit: int | None) -> Iterable[dict[str, Any]]:
    top = limit or 10_000
    for p in primes_upto(31):
        for n in range(p, top + 1):
            i, ii = check_lemma_basep(n, p)
            yield {"n": n, "p": p, "part_i": _v(i), "part_ii": _v(ii)}


@_lemma("parity")
def _rows_parity(limit: int | None) -> Iterable[dict[str, Any]]:
    for n in range(2, (limit or 10_000) + 1):
        m = check_lemma_parity(n)
        yield {"n": n, "m": m, "verdict": _v(m == (1 if n % 2 else 2))}


@_lemma("basepbound")
def _rows_basepbound(limit: int | None) -> Iterable[dict[str, Any]]:
    for p in primes_upto(31):
        if p < 5:
            continue
        for n in range(2, (limit or 10_000) + 1):
            general, all_one = check_lemma_basepbound(n, p)
            yield {"n": n, "p": p, "general": _v(general), "all_ai_one": _v(all_one)}


@_lemma("mtbound")
def _rows_mtbound(limit: int | None) -> Iterable[dict[str, Any]]:
    top = limit or 64
    for part in MT_PARTS:
        for q in prime_powers_upto(128):
            for m in range(1, top + 1):
                for t in range(1, top + 1):
                    if mtbound_applies(part, m, q, t):
                        yield {"part": part, "m": m, "t": t, "q": q, "verdict": _v(check_mtbound(part, m, t, q))}


@_lemma("bothcases")
def _rows_bothcases(limit: int | None) -> Iterable[dict[str, Any]]:
    for q in prime_powers_upto(limit or 64):
        for s in range(2, 9):
            for t in range(1, 7):
                yield {"q": q, "s": s, "t": t, "verdict": _v(check_bothcases(q, s, t))}


def _v(flag: bool | None) -> str:
    return "n/a" if flag is None else ("true" if flag else "false")


def cmd_lemmas(args: argparse.Namespace) -> tuple[str, int]:
    rows = list(LEMMAS[args.lemma](args.max))
    if args.failures_only:
        rows = [r for r in rows if "false" in r.values()]
    fmt = args.format
    if fmt == "json":
        return _render(rows, "json"), 0
    if not rows:
        return "", 0
    return _render(None, fmt, rows), 0


def cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    if args.list:
        return "".join(f"{name}\t{desc}\n" for name, (desc, _) in SUITES.items()), 0
    names = args.suite or list(SUITES)
    results = run_suites(names, args.threads)
    code = 0 if all(r.ok for r in results) else EXIT_FAIL
    if args.format == "json":
        return _render([r.to_json(args.timings) for r in results], "json"), code
    rows = []
    for r in results:
        for c in r.checks:
            row = {"suite": r.name, **c.to_json(args.timings)}
            row["params"] = json.dumps(row["params"], sort_keys=True)
            rows.append(row)
    if args.format == "csv":
        return _render(None, "csv", rows), code
    lines = []
    for c in rows:
        line = f"{c['verdict'].upper():7} {c['id']}  expected {c['expected']}  observed {c['observed']}"
        if c["verdict"] == "fail":
            line += f"  [reproduce: pelements verify --suite {c['suite']}]"
        lines.append(line)
    lines += [f"suite {r.name}: {'pass' if r.ok else 'FAIL'}" for r in results]
    return "\n".join(lines) + "\n", code


# --- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="enumeration cap")
    common.add_argument("--aut-cap", type=_positive, default=DEFAULT_AUT_CAP, help="automorphism search cap")
    common.add_argument("--threads", type=_positive, default=1)

    primes = argparse.ArgumentParser(add_help=False)
    primes.add_argument("-p", "--prime", type=_prime)
    primes.add_argument("--primes", type=_prime_list, help="comma-separated primes")

    parser = argparse.ArgumentParser(prog="pelements", description="p-element counts, M_p values and bound checks")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct", parents=[common], help="build a group and print its generators")
    s.add_argument("expr")
    s.set_defaults(func=cmd_construct, default_format="text")

    s = sub.add_parser("census", parents=[common, primes], help="count pi-elements")
    s.add_argument("expr")
    s.set_defaults(func=cmd_census, default_format="json")

    s = sub.add_parser("bounds", parents=[common], help="evaluate f, i, h or thmC exactly")
    s.add_argument("expr")
    s.set_defaults(func=cmd_bounds, default_format="json")

    s = sub.add_parser("mp", parents=[common, primes], help="M_p via composition factors")
    s.add_argument("expr")
    s.set_defaults(func=cmd_mp, default_format="json")

    s = sub.add_parser("lemmas", parents=[common], help="audit rows for the inequality lemmas")
    s.add_argument("lemma", choices=sorted(LEMMAS))
    s.add_argument("--max", type=_positive, help="upper end of the grid")
    s.add_argument("--failures-only", action="store_true")
    s.set_defaults(func=cmd_lemmas, default_format="csv")

    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    s.add_argument("--suite", action="append", choices=sorted(SUITES), help="repeatable; default all")
    s.add_argument("--list", action="store_true", help="list suites and exit")
    s.add_argument("--timings", action="store_true", help="include per-check elapsed seconds")
    s.set_defaults(func=cmd_verify, default_format="text")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        text, code = args.func(args)
    except (UsageError, ExprError, FormatError, UnknownSuite, ValueError, OSError) as exc:
        print(f"pelements: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"pelements: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (AssertionError, ArithmeticError, KeyError, TypeError) as exc:
        print(f"pelements: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
