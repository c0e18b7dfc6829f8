"""Command-line entry point: ``mindegree <command> ...``.

Exit codes: 0 success, 1 violation or rejected report, 2 budget exhausted
or incomplete lattice, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .group import BudgetError
from .lattice import ENGINE_VERSION, cached_subgroup_classes, canonical_json, default_cache_dir
from .mu import mu
from .perm import PermError
from .spec_lang import parse_spec
from .structure import centralizer_in_sym
from .verifier import (
    check_report,
    generate_table,
    saunders_witness,
    seal,
    sweep_products,
    table_csv,
    table_text,
)

EXIT_OK, EXIT_VIOLATION, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3


def _emit(args, data: dict, human: str) -> None:
    """Print the human form, or the canonical JSON with ``--json``; also
    write the JSON to ``--output`` when given."""
    text = canonical_json(data) + "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    sys.stdout.write(text if getattr(args, "json", False) else human + "\n")


def _cache(args) -> Path:
    return Path(args.cache) if getattr(args, "cache", None) else default_cache_dir()


def cmd_mu(args) -> int:
    spec = parse_spec(args.spec)
    G = spec.resolve()
    cert = mu(G)
    data = seal({"kind": "certificate", "engine_version": ENGINE_VERSION,
                 "spec": spec.to_text(), "certificate": cert.to_dict()})
    lines = [f"mu = {cert.mu}",
             f"group: degree {G.degree}, order {G.order()}",
             f"witness subgroups (orders): {cert.witness_orders}",
             "embedding: " + ", ".join(cert.embedding_images)]
    if cert.lattice_complete != True:  # noqa: E712
        lines.append(f"lattice complete: {cert.lattice_complete}")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_centralizer(args) -> int:
    spec = parse_spec(args.spec)
    G = spec.resolve()
    C = centralizer_in_sym(G)
    gens = C.cycle_strings()
    data = seal({"kind": "centralizer", "engine_version": ENGINE_VERSION,
                 "spec": spec.to_text(), "degree": G.degree, "gens": gens, "order": C.order()})
    human = f"centralizer in Sym({G.degree}): order {C.order()}\n" + ("\n".join(gens) or "()")
    _emit(args, data, human)
    return EXIT_OK


def cmd_lattice(args) -> int:
    spec = parse_spec(args.spec)
    G = spec.resolve()
    lat = cached_subgroup_classes(G, spec.to_text(), _cache(args), budget=args.budget)
    counts = lat.counts_by_order()
    data = seal({"kind": "lattice", "engine_version": ENGINE_VERSION, "spec": spec.to_text(),
                 "classes": len(lat), "subgroups": lat.total_subgroups(),
                 "complete": lat.complete,
                 "classes_by_order": {str(k): v for k, v in sorted(counts.items())}})
    lines = [f"{spec.to_text()}: order {G.order()}, {len(lat)} classes, "
             f"{lat.total_subgroups()} subgroups, complete: {lat.complete}"]
    lines += [f"  order {k}: {v} classes" for k, v in sorted(counts.items())]
    _emit(args, data, "\n".join(lines))
    return EXIT_BUDGET if lat.complete is False else EXIT_OK


def cmd_verify(args) -> int:
    n = args.degree
    if n >= 8 and not args.deep:
        print("degrees 8 and 9 need --deep", file=sys.stderr)
        return EXIT_INPUT
    if not 1 <= n <= 9:
        print("degree must be in 1..9", file=sys.stderr)
        return EXIT_INPUT
    report = sweep_products(n, cache_dir=_cache(args), jobs=args.jobs, lattice_budget=args.budget)
    _emit(args, report.to_dict(), report.render_text())
    if report.violations:
        return EXIT_VIOLATION
    if report.lattice_complete is False:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_table(args) -> int:
    table = generate_table(args.max_degree, cache_dir=_cache(args))
    if args.format == "csv":
        out = table_csv(table)
    elif args.format == "json":
        out = canonical_json(table) + "\n"
    else:
        out = table_text(table) + "\n"
    if args.output:
        Path(args.output).write_text(out)
    sys.stdout.write(out)
    return EXIT_BUDGET if table["partial"] else EXIT_OK


def cmd_witness10(args) -> int:
    try:
        data = saunders_witness()
    except AssertionError as exc:
        print(f"witness check failed: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    human = (f"mu(G) = {data['mu_group']}, |C| = 2, mu(C) = {data['mu_centralizer']}\n"
             f"mu(G x C) = {data['mu_product']}\n{data['summary']}")
    _emit(args, data, human)
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        data = json.loads(Path(args.report).read_text())
    except (OSError, ValueError) as exc:
        print(f"cannot read report: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not isinstance(data, dict):
        print("report must be a JSON object", file=sys.stderr)
        return EXIT_INPUT
    outcome = check_report(data)
    if outcome:
        print(f"ok: {data.get('kind')} report verified")
        return EXIT_OK
    for p in outcome.problems:
        print(f"rejected: {p}")
    return EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mindegree",
                                     description="Minimal faithful permutation degrees.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cache=False):
        p.add_argument("--json", action="store_true", help="print the machine-format report")
        p.add_argument("--output", help="also write the machine-format report here")
        if cache:
            p.add_argument("--cache", help="lattice cache directory (default: $MINDEGREE_CACHE)")

    p = sub.add_parser("mu", help="minimal degree with certificate")
    p.add_argument("spec")
    common(p)
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("centralizer", help="centralizer in the symmetric group")
    p.add_argument("spec")
    common(p)
    p.set_defaults(func=cmd_centralizer)

    p = sub.add_parser("lattice", help="conjugacy classes of subgroups")
    p.add_argument("spec")
    p.add_argument("--budget", type=int, help="maximum number of classes")
    common(p, cache=True)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("verify", help="additivity sweep over Sym(n)")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--deep", action="store_true", help="allow degrees 8 and 9")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, help="maximum number of lattice classes")
    common(p, cache=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="minimal degrees of small groups")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--format", choices=("csv", "txt", "json"), default="txt")
    p.add_argument("--output")
    p.add_argument("--cache", help="lattice cache directory (default: $MINDEGREE_CACHE)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("witness10", help="degree-10 strict inequality example")
    common(p)
    p.set_defaults(func=cmd_witness10)

    p = sub.add_parser("check", help="re-verify a saved report")
    p.add_argument("report")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PermError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
