"""Command-line front end: find-t0, star, gram, congruence, suite.

Exit codes: 0 all checks pass, 1 a verification failed (the report carries
witnesses), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .congruence import (
    AmbiguousMatch,
    NotOrthonormalBasis,
    coefficients,
    line_bundle_table,
    match_line_bundle,
    rank_law,
    reduce_coefficients,
    signed_unit,
)
from .cyclotomic import CyclotomicError
from .descriptors import ROOT_KINDS, DescriptorError, parse_space, split_top_level
from .exceptional import NormalizationFailure, UnsupportedTwist, bundle_class, standard_collection
from .localization import ArityMismatch, SpaceMismatch, build_space, gram_matrix, verify_star_direct
from .rootdata import (
    UnsupportedFamily,
    UnsupportedType,
    bounded_star_search,
    build_root_system,
    check_star_conditions,
    construct_t0,
    parity_obstruction,
)
from .suite import FAMILY_NAMES, FAULTS, SuiteConfig, run_suite, summary_line

COMMANDS = ("find-t0", "star", "gram", "congruence", "suite")

INPUT_ERRORS = (
    DescriptorError,
    UnsupportedType,
    UnsupportedFamily,
    UnsupportedTwist,
    ArityMismatch,
    SpaceMismatch,
    CyclotomicError,
    ValueError,
)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    space: str | None = None
    p: int | None = None
    collection: list[str] = field(default_factory=list)
    order_bound: int = 24
    out: Path | None = None
    json_only: bool = False
    family: str | None = None
    inject_fault: str | None = None
    verbose: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.command != "suite" and not self.space:
            raise UsageError(f"{self.command} needs a space descriptor")
        if self.command == "congruence" and (self.p is None or self.p < 2):
            raise UsageError("congruence needs --p with a prime p")
        if self.space:
            parse_space(self.space)


def _dump(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- commands -----------------------------------------------------------------------------------


def _is_root(descriptor: str) -> bool:
    return parse_space(descriptor).family in ROOT_KINDS


def _obstruction_or_search(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    """No constructed element: report the parity obstruction, else a bounded search."""
    parsed = parse_space(cfg.space)
    rank, node = parsed.params
    rs = build_root_system(parsed.family, rank)
    rs._check_node(node)
    obs = parity_obstruction(rs, node)
    if obs is not None:
        report = {"space": cfg.space, "passed": False, "obstruction": obs.to_json()}
        lines = [
            f"{cfg.space}: no element exists",
            f"  dim X = {obs.dimension} is odd and omega_{node} has odd order {obs.order_mod_qi} "
            "modulo the lattice of roots as long as alpha_" + str(node),
        ]
        return 1, report, lines
    search = bounded_star_search(rs, node, cfg.order_bound)
    report = {"space": cfg.space, "search": search.to_json(), "passed": bool(search.found)}
    if search.found:
        lines = [f"{cfg.space}: found by search, coweight {search.to_json()['found'][0]}"]
        return 0, report, lines
    scope = "all orders" if search.complete else f"orders {search.orders_searched}, skipped {search.orders_skipped}"
    return 1, report, [f"{cfg.space}: no element up to order {cfg.order_bound} ({scope})"]


def _star_reports(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    try:
        t0 = construct_t0(cfg.space)
    except UnsupportedFamily:
        if not _is_root(cfg.space):
            raise
        return _obstruction_or_search(cfg)
    space = build_space(cfg.space)
    direct = verify_star_direct(space, t0)
    report = {"space": cfg.space, "t0": t0.to_json(), "direct": direct.to_json(), "geometry": space.summary()}
    passed = direct.passed
    if space.root is not None:
        kind, rank, node = space.root
        root_form = check_star_conditions(build_root_system(kind, rank), node, t0)
        report["root_form"] = root_form.to_json()
        passed = passed and root_form.passed
    report["passed"] = passed
    lines = [f"{cfg.space}: t0 exponents {', '.join(report['t0']['exponents'])} (order {t0.order})"]
    if t0.spin_blocks:
        lines.append(f"  spin exponents {', '.join(report['t0']['spin_exponents'])}")
    lines.append(f"  star: {'pass' if passed else 'FAIL'}")
    lines += [f"  {v}" for v in direct.violations[:5]]
    if "root_form" in report:
        lines += [f"  {v}" for v in report["root_form"]["violations"][:5]]
    return (0 if passed else 1), report, lines


def cmd_find_t0(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    return _star_reports(cfg)


def cmd_star(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    code, report, lines = _star_reports(cfg)
    report.pop("t0", None)
    return code, report, [ln for ln in lines if "exponents" not in ln] or lines


def _classes(cfg: RunConfig, space, t0):
    if not cfg.collection:
        return standard_collection(space, t0)
    return [bundle_class(space, t0, text) for text in cfg.collection]


def cmd_gram(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    space = build_space(cfg.space)
    t0 = construct_t0(cfg.space)
    classes = _classes(cfg, space, t0)
    g = gram_matrix(space, t0, classes)
    report = {"space": cfg.space, "gram": g.to_json(), "passed": g.is_identity}
    n = len(classes)
    lines = [f"{cfg.space}: {n}x{n} Gram matrix {'is the identity' if g.is_identity else 'is NOT the identity'}"]
    lines += [f"  {v}" for v in g.violations[:10]]
    return (0 if g.is_identity else 1), report, lines


def cmd_congruence(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    space = build_space(cfg.space)
    t0 = construct_t0(cfg.space)
    p = cfg.p
    basis = standard_collection(space, t0)
    try:
        table = line_bundle_table(space, t0, basis, p)
    except AmbiguousMatch as exc:
        table, table_error = None, str(exc)
    else:
        table_error = None
    members = not cfg.collection
    targets = basis if members else _classes(cfg, space, t0)
    ranks = [b.rank for b in basis]
    reports, lines, ok = [], [], True
    for v in targets:
        cv = coefficients(space, t0, basis, v)
        red = reduce_coefficients(cv, p)
        checks = []
        if v.rank is not None and None not in ranks:
            checks.append({"name": "rank law", "passed": rank_law(red, ranks, v.rank, p)})
        if members:
            checks.append({"name": "signed unit vector", "passed": signed_unit(red, p) is not None})
        match = None
        if table is not None:
            hit = match_line_bundle(red, table)
            if hit is not None:
                match = {"label": hit[0], "sign": hit[1]}
        entry = cv.to_json()
        entry.update({"class": v.label, "match": match, "checks": checks})
        reports.append(entry)
        ok = ok and all(c["passed"] for c in checks)
        m = "none" if match is None else f"{'+' if match['sign'] > 0 else '-'}{match['label']}"
        failed = [c["name"] for c in checks if not c["passed"]]
        lines.append(f"  {v.label}: reduced {red}, line bundle {m}" + (f", FAILED {failed}" if failed else ""))
    report = {"space": cfg.space, "p": p, "basis": [b.label for b in basis], "classes": reports, "passed": ok}
    if table_error:
        report["table_error"] = table_error
    lines.insert(0, f"{cfg.space} mod {p}: {'pass' if ok else 'FAIL'}")
    return (0 if ok else 1), report, lines


def cmd_suite(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    results = run_suite(SuiteConfig(family=cfg.family, fault=cfg.inject_fault))
    passed = all(r.passed for r in results)
    report = {
        "family": cfg.family,
        "fault": cfg.inject_fault,
        "criteria": [r.to_json() for r in results],
        "passed": passed,
    }
    lines = [summary_line(r) for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} criteria pass")
    return (0 if passed else 1), report, lines


HANDLERS = {
    "find-t0": cmd_find_t0,
    "star": cmd_star,
    "gram": cmd_gram,
    "congruence": cmd_congruence,
    "suite": cmd_suite,
}


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    code, report, lines = HANDLERS[cfg.command](cfg)
    report = {"command": cfg.command, "exit_code": code, **report}
    text = _dump(report)
    if cfg.out is not None:
        cfg.out.write_text(text, encoding="utf-8")
    if cfg.json_only:
        stdout.write(text)
    else:
        stdout.write("\n".join(lines) + "\n")
    return code


# -- argument parsing ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclok", description="Exact checks of exceptional collections at torus elements.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, space=True):
        if space:
            sp.add_argument("space_pos", nargs="?", metavar="SPACE", help="e.g. D:5:1, grassmannian:2:4, prod(a;b)")
            sp.add_argument("--space", help="space descriptor (alternative to the positional)")
        sp.add_argument("--out", type=Path, help="write the full JSON report here")
        sp.add_argument("--json-only", action="store_true", help="print only the JSON report")
        sp.add_argument("-v", "--verbose", action="store_true")

    for name in ("find-t0", "star"):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--order-bound", type=int, default=24, help="bound for the fallback search")
    sp = sub.add_parser("gram")
    common(sp)
    sp.add_argument("--collection", action="append", default=[], help="bundle descriptors, ';'-separated")
    sp = sub.add_parser("congruence")
    common(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--collection", action="append", default=[], help="bundle descriptors, ';'-separated")
    sp = sub.add_parser("suite")
    common(sp, space=False)
    sp.add_argument("--family", choices=FAMILY_NAMES)
    sp.add_argument("--inject-fault", choices=FAULTS)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    space = getattr(args, "space", None)
    pos = getattr(args, "space_pos", None)
    if space and pos and space != pos:
        raise UsageError("give the space either positionally or with --space")
    collection = [c for item in getattr(args, "collection", []) for c in split_top_level(item) if c]
    return RunConfig(
        command=args.command,
        space=space or pos,
        p=getattr(args, "p", None),
        collection=collection,
        order_bound=getattr(args, "order_bound", 24),
        out=args.out,
        json_only=args.json_only,
        family=getattr(args, "family", None),
        inject_fault=getattr(args, "inject_fault", None),
        verbose=args.verbose,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = config_from_args(args)
        return run(cfg)
    except (UsageError, NotOrthonormalBasis, NormalizationFailure, *INPUT_ERRORS) as exc:
        print(f"cyclok: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
