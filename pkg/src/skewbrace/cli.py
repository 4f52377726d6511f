"""Command-line front end.

Exit status: 0 on success, 1 when a verification check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

from . import catalog as cat
from .brace import SkewBrace, brace_from_json, lemma_identities_check
from .constructors import EXAMPLES, enumerate_braces
from .groups import GroupError, OrderCapExceeded, group_by_name
from .series import (
    NotApplicable,
    SeriesReport,
    abelian_corollary_check,
    analyze,
    bound_attainment_search,
    proof_containments_check,
    proposition_check,
    theorem_a_check,
)
from .ybe import SolutionError, multipermutation_level, retraction_tower, solution_from_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UnknownExample(ValueError):
    pass


class InputError(Exception):
    pass


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise cat.FileUnreadable(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def _fmt_set(b: SkewBrace, s) -> str:
    return "{" + ", ".join(b.label(x) for x in sorted(s)) + "}"


def _fmt_class(c) -> str:
    return "not nilpotent" if c is None else str(c)


def render_report(b: SkewBrace, rep: SeriesReport) -> str:
    lines = [f"order {b.order}"]
    for k, s in enumerate(rep.left_chain, 1):
        lines.append(f"  B^{k} = {_fmt_set(b, s)}  (size {len(s)})")
    for k, s in enumerate(rep.right_chain, 1):
        lines.append(f"  B^({k}) = {_fmt_set(b, s)}  (size {len(s)})")
    lines += [
        f"  left class: {_fmt_class(rep.left_class)}",
        f"  right class: {_fmt_class(rep.right_class)}",
        f"  class of (B,+): {_fmt_class(rep.add_class_m)}",
        f"  class of (B^2,+): {_fmt_class(rep.bsq_class_r)}",
        f"  central class: {_fmt_class(rep.central_class)}",
        f"  ker lambda = {_fmt_set(b, rep.lambda_kernel)}",
    ]
    return "\n".join(lines)


def _analysis(b: SkewBrace) -> dict:
    rep = analyze(b)
    v = theorem_a_check(b, rep)
    return {"report": rep.to_json(), "theorem_a": v.to_json()}


def cmd_example(args) -> tuple[int, str]:
    if args.name not in EXAMPLES:
        raise UnknownExample(f"unknown example {args.name!r}; choose from {', '.join(EXAMPLES)}")
    b = EXAMPLES[args.name]()
    if args.format == "text":
        rep = analyze(b)
        return EXIT_OK, f"example {args.name}\n" + render_report(b, rep) + "\n"
    return EXIT_OK, _json({"name": args.name, "brace": b.to_json(), **_analysis(b)})


def cmd_analyze(args) -> tuple[int, str]:
    b = brace_from_json(_load_json(args.file))
    if args.format == "text":
        rep = analyze(b)
        v = theorem_a_check(b, rep)
        return EXIT_OK, render_report(b, rep) + f"\n  class bound check: {v.status}\n"
    return EXIT_OK, _json(_analysis(b))


def cmd_enumerate(args) -> tuple[int, str]:
    g = group_by_name(args.group)
    catalog = enumerate_braces(g, dedup=not args.no_dedup, cap=args.cap)
    if args.format == "text":
        rows = [f"{len(catalog)} braces with additive group {args.group}"]
        for e in catalog:
            rep = analyze(e.brace)
            rows.append(
                f"  {e.brace_id}: (B,.) = {e.mul_group or f'order {e.brace.order}, unnamed'}, left {_fmt_class(rep.left_class)},"
                f" right {_fmt_class(rep.right_class)}, central {_fmt_class(rep.central_class)}"
            )
        return EXIT_OK, "\n".join(rows) + "\n"
    buf = io.StringIO()
    cat.write_catalog(catalog, buf)
    return EXIT_OK, buf.getvalue()


def verify_brace(brace_id: str, b: SkewBrace) -> dict:
    rep = analyze(b)
    thm = theorem_a_check(b, rep)
    cor = abelian_corollary_check(b, rep)
    prop = proposition_check(b, rep)
    lemma = lemma_identities_check(b)
    out = thm.to_json(brace_id)
    out["status"] = thm.status
    out["corollary"] = cor.status
    out["proposition"] = (
        "not-applicable" if not prop.applicable else ("pass" if prop.passed else "FAIL")
    )
    out["lemma"] = "pass" if lemma.all_passed else "FAIL"
    try:
        out["proof_chain"] = "pass" if proof_containments_check(b).all_passed else "FAIL"
    except NotApplicable:
        out["proof_chain"] = "not-applicable"
    return out


def cmd_verify(args) -> tuple[int, str]:
    catalog = cat.read_catalog(args.catalog)
    verdicts = [verify_brace(e.brace_id, e.brace) for e in catalog]
    keys = ("status", "corollary", "proposition", "lemma", "proof_chain")
    failed = [v["brace_id"] for v in verdicts if any(v[k] == "FAIL" for k in keys)]
    summary = {
        "total": len(verdicts),
        "pass": sum(v["status"] == "pass" for v in verdicts),
        "not_applicable": sum(v["status"] == "not-applicable" for v in verdicts),
        "fail": len(failed),
        "failed_ids": failed,
    }
    code = EXIT_FAIL if failed else EXIT_OK
    if args.format == "text":
        rows = [
            f"{v['brace_id']}: {v['status']} (m={v['m']}, r={v['r']}, right class={v['right_class']},"
            f" bound={v['bound']}); corollary {v['corollary']}, proposition {v['proposition']},"
            f" lemma {v['lemma']}, proof chain {v['proof_chain']}"
            for v in verdicts
        ]
        rows.append(
            f"{summary['total']} braces: {summary['pass']} pass, "
            f"{summary['not_applicable']} not applicable, {summary['fail']} failing"
        )
        return code, "\n".join(rows) + "\n"
    return code, _json({"summary": summary, "verdicts": verdicts})


def cmd_search(args) -> tuple[int, str]:
    catalog = cat.read_catalog(args.catalog)
    report = bound_attainment_search((e.brace_id, e.brace) for e in catalog)
    if args.format == "text":
        rows = [f"{report['applicable']} braces satisfy the hypotheses"]
        for row in report["ranked"]:
            mark = "  <- attains bound" if row["attains_bound"] else ""
            rows.append(
                f"  {row['brace_id']}: right class {row['right_class']} vs bound {row['bound']}"
                f" (m={row['m']}, r={row['r']}){mark}"
            )
        rows.append(f"attaining with m*r > 1: {len(report['attaining_with_mr_above_1'])}")
        return EXIT_OK, "\n".join(rows) + "\n"
    return EXIT_OK, _json(report)


def cmd_retract(args) -> tuple[int, str]:
    s = solution_from_json(_load_json(args.file))
    sizes = retraction_tower(s)
    level = multipermutation_level(s)
    if args.format == "text":
        lvl = "not multipermutation" if level is None else str(level)
        return EXIT_OK, f"retraction sizes: {' -> '.join(map(str, sizes))}\nlevel: {lvl}\n"
    return EXIT_OK, _json({"n": s.n, "tower": sizes, "level": level})


def _json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output to this path")

    parser = argparse.ArgumentParser(prog="skewbrace", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("example", parents=[common], help="show one of the built-in worked examples")
    p.add_argument("name")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("analyze", parents=[common], help="series and classes of a brace JSON file")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("enumerate", parents=[common], help="all braces on a named additive group")
    p.add_argument("group")
    p.add_argument("--cap", type=int, default=8)
    p.add_argument("--no-dedup", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="check the class bounds on a catalog")
    p.add_argument("catalog")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="rank a catalog by closeness to the class bound")
    p.add_argument("catalog")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("retract", parents=[common], help="retraction tower of a solution JSON file")
    p.add_argument("file")
    p.set_defaults(func=cmd_retract)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    # shared option objects: defaults are filled here, not via set_defaults
    args.format = getattr(args, "format", "text")
    args.out = getattr(args, "out", None)
    try:
        code, text = args.func(args)
    except (
        UnknownExample,
        InputError,
        cat.FileUnreadable,
        cat.MalformedEntry,
        OrderCapExceeded,
        GroupError,
        SolutionError,
        KeyError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
