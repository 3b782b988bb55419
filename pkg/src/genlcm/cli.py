"""Command-line front end: build, det, factor, verify, bench."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .arithfun import ArithFunError
from .builders import FAMILY_TAGS, MatrixFamily, build_factorization
from .dets import ClosedFormInconsistency, NoClosedFormError, bareiss_det, closed_form_det
from .formats import (
    FORMATS,
    format_rational,
    latex_rational,
    render_matrix,
    render_named_matrices,
)
from .verify import (
    CLAIMS,
    DEFAULT_G_KINDS,
    SuiteConfig,
    reports_to_jsonl,
    resolve_g,
    run_suite,
    summary_table,
)

FORMAT_ENV = "GENLCM_FORMAT"

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _n_range(text: str) -> list[int]:
    """'8,16,32' or '4-20' or '4-64:4'."""
    out = []
    for part in text.split(","):
        if "-" in part:
            lo, _, rest = part.partition("-")
            hi, _, step = rest.partition(":")
            out.extend(range(int(lo), int(hi) + 1, int(step or 1)))
        else:
            out.append(int(part))
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    default_fmt = os.environ.get(FORMAT_ENV, "csv")
    if default_fmt not in FORMATS:
        default_fmt = "csv"

    p = argparse.ArgumentParser(
        prog="genlcm", description="Exact GCD, LCM and generalized LCM matrices."
    )
    sub = p.add_subparsers(dest="subcommand", required=True)

    def matrix_args(sp, need_family=True):
        sp.add_argument("--family", choices=FAMILY_TAGS, required=need_family)
        sp.add_argument("--g", default=None, help="function identifier, e.g. one, id, liouville, user:2=1/2,3=-1")
        sp.add_argument("--n", type=_positive, required=True)
        sp.add_argument("--format", choices=FORMATS, default=default_fmt)
        sp.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")

    matrix_args(sub.add_parser("build", help="emit a matrix"))
    matrix_args(sub.add_parser("det", help="determinant by elimination and closed form"))
    matrix_args(sub.add_parser("factor", help="emit factor matrices and their product"))

    v = sub.add_parser("verify", help="run the identity suite")
    v.add_argument("--max-n", type=_positive, default=8)
    v.add_argument("--min-n", type=_positive, default=1)
    v.add_argument("--g", default=",".join(DEFAULT_G_KINDS), help="comma-separated function identifiers")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--claims", default="", help="comma-separated claim ids (default: all)")
    v.add_argument("--jsonl", default=None, help="write JSON-lines reports here ('-' for stdout)")
    v.add_argument("--timings", action="store_true", help="include elapsed times in JSON lines")
    v.add_argument("--list-claims", action="store_true")

    b = sub.add_parser("bench", help="time closed-form vs elimination determinants")
    b.add_argument("--family", choices=FAMILY_TAGS, default="f1")
    b.add_argument("--g", default="id")
    b.add_argument("--n", type=_n_range, default=_n_range("8,16,32,64"))
    b.add_argument("--output", "-o", default="-")
    return p


def _function_for(args, n_needed: int):
    if args.g is None:
        return None
    if "," in args.g and not args.g.startswith("user:"):
        raise UsageError("--g takes a single function identifier here")
    return resolve_g(args.g, n_needed)


def _family(args) -> MatrixFamily:
    if args.family in ("f1", "f2") and args.g is None:
        raise UsageError(f"--family {args.family} requires --g")
    return MatrixFamily(args.family, _function_for(args, args.n))


def _det_payload(family: MatrixFamily, n: int) -> tuple[dict, bool]:
    by_elim = bareiss_det(family.build(n))
    payload = {"family": family.tag, "g": family.g.name if family.g else None, "n": n}
    payload["bareiss"] = by_elim.to_json_obj()
    try:
        closed = closed_form_det(family, n)
    except NoClosedFormError as exc:
        payload["closed_form"] = None
        payload["note"] = str(exc)
        return payload, True
    except ClosedFormInconsistency as exc:
        payload["closed_form"] = None
        payload["note"] = str(exc)
        payload["agree"] = False
        return payload, False
    payload["closed_form"] = closed.to_json_obj()
    agree = closed.value == by_elim.value
    payload["agree"] = agree
    return payload, agree


def _render_det(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True) + "\n"
    rows = [("bareiss", payload["bareiss"])]
    if payload["closed_form"] is not None:
        rows.append(("closed_form", payload["closed_form"]))
    if fmt == "csv":
        lines = ["route,method,order,value"]
        lines += [f"{k},{r['method']},{r['order']},{r['value']}" for k, r in rows]
        if "agree" in payload:
            lines.append(f"agree,,,{str(payload['agree']).lower()}")
        return "\n".join(lines) + "\n"
    lines = [f"% {k} ({r['method']}), n = {r['order']}\n{_latex_value(r['value'])}" for k, r in rows]
    return "\n".join(lines) + "\n"


def _latex_value(text: str) -> str:
    return latex_rational(Fraction(text))


def _bench(args) -> str:
    lines = ["n,closed_s,bareiss_s,value_digits,agree"]
    largest = max(args.n)
    g = resolve_g(args.g, largest) if args.g else None
    family = MatrixFamily(args.family, g)
    # warm-up
    bareiss_det(family.build(1))
    closed_form_det(family, 1)
    for n in args.n:
        t0 = time.perf_counter()
        closed = closed_form_det(family, n)
        t1 = time.perf_counter()
        elim = bareiss_det(family.build(n))
        t2 = time.perf_counter()
        digits = len(format_rational(abs(closed.value)))
        agree = str(closed.value == elim.value).lower()
        lines.append(f"{n},{t1 - t0:.6f},{t2 - t1:.6f},{digits},{agree}")
    return "\n".join(lines) + "\n"


def _emit(text: str, output: str) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def execute(args: argparse.Namespace) -> int:
    if args.subcommand == "build":
        family = _family(args)
        _emit(render_matrix(family.build(args.n), args.format), args.output)
        return EXIT_OK

    if args.subcommand == "det":
        family = _family(args)
        payload, agree = _det_payload(family, args.n)
        _emit(_render_det(payload, args.format), args.output)
        if not agree:
            print("error: determinant routes disagree", file=sys.stderr)
            return EXIT_CHECK_FAILED
        return EXIT_OK

    if args.subcommand == "factor":
        if args.family == "gcd":
            raise UsageError("no factorization is implemented for the gcd family")
        if args.family in ("f1", "f2") and args.g is None:
            raise UsageError(f"--family {args.family} requires --g")
        g = _function_for(args, args.n)
        try:
            fac = build_factorization(args.family, args.n, g)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        product = fac.product()
        built = MatrixFamily(args.family, g).build(args.n)
        named = fac.factors() + [("product", product)]
        _emit(render_named_matrices(named, args.format), args.output)
        if product != built:
            print("error: factor product differs from the built matrix", file=sys.stderr)
            return EXIT_CHECK_FAILED
        return EXIT_OK

    if args.subcommand == "verify":
        if args.list_claims:
            width = max(map(len, CLAIMS))
            for name, c in CLAIMS.items():
                print(f"{name:<{width}}  {'g' if c.uses_g else '-'}  {c.description}")
            return EXIT_OK
        if args.min_n > args.max_n:
            raise UsageError("--min-n exceeds --max-n")
        config = SuiteConfig(
            max_n=args.max_n,
            min_n=args.min_n,
            g_kinds=tuple(_split_kinds(args.g)),
            seed=args.seed,
            claims=tuple(c for c in args.claims.split(",") if c),
        )
        reports = run_suite(config)
        if args.jsonl:
            _emit(reports_to_jsonl(reports, args.timings), args.jsonl)
        if args.jsonl != "-":
            sys.stdout.write(summary_table(reports))
        return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED

    if args.subcommand == "bench":
        _emit(_bench(args), args.output)
        return EXIT_OK

    raise UsageError(f"unknown subcommand {args.subcommand}")


def _split_kinds(text: str) -> list[str]:
    # user:2=1/2,3=-1 contains commas of its own; keep its items attached
    kinds: list[str] = []
    for part in text.split(","):
        if kinds and kinds[-1].startswith("user:") and "=" in part and ":" not in part:
            kinds[-1] += "," + part
        elif part:
            kinds.append(part)
    return kinds


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return execute(args)
    except (UsageError, ArithFunError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
