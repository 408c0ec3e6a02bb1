#!/usr/bin/env python3
"""
ER Pointlikes
Main entry point: command-line interface over the core package
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Import configuration
from config import APP_NAME, SAMPLE_EXTENSION, get_about_text, get_version_string

# Import core modules
from core.automaton import (
    automaton_to_dict, build_automaton, build_global_group, build_local_groups,
    transition_semigroup, witness_relational_morphism, witness_to_dict,
)
from core.cayley_io import load_semigroup
from core.construct import construct_ER, is_pointlike, max_pointlikes
from core.errors import CayleyFormatError, GuardExceededError, InvariantViolationError
from core.export import ExportManager, to_json_text
from core.limits import Limits
from core.logging_config import clean_old_logs, log_exception, setup_logging
from core.power import Subset
from core.resource_manager import ResourceManager
from core.semigroup import Semigroup, is_in_ER
from core.settings_manager import SettingsManager
from core.stable import build_stable
from core.type2 import is_in_ER_via_injectivity, type2_partition
from core.verifier import certify, run_catalog


EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_GUARD = 2
EXIT_INPUT = 3

logger = logging.getLogger(__name__)


def _resolve_input(name: str) -> Path:
    """A path as given, else a bundled sample of that name"""
    path = Path(name)
    if path.exists():
        return path
    samples_dir = ResourceManager().get_samples_dir()
    for candidate in (samples_dir / name, samples_dir / f"{name}{SAMPLE_EXTENSION}"):
        if candidate.exists():
            return candidate
    return path


def _load(args) -> Semigroup:
    return load_semigroup(_resolve_input(args.file))


def _fmt_set(S: Semigroup, elements) -> str:
    return "{" + ",".join(S.label(x) for x in sorted(elements)) + "}"


def _write_json(args, data) -> None:
    """--output PATH saves the document, --json prints it; both may be given"""
    if args.output:
        path = ExportManager().export_json(data, args.output)
        logger.info(f"JSON document saved to {path}")
    if args.json:
        sys.stdout.write(to_json_text(data))


def _parse_subset(S: Semigroup, text: str) -> Subset:
    """'a,b' -> Subset of the named elements"""
    names = [part.strip() for part in text.split(",") if part.strip()]
    if not names:
        raise ValueError("--test needs at least one element label")
    unknown = [name for name in names if name not in S.labels]
    if unknown:
        raise ValueError(f"unknown element label(s): {', '.join(unknown)}")
    return Subset.of(S.labels.index(name) for name in names)


def cmd_info(args, limits: Limits) -> int:
    S = _load(args)
    green = S.green()
    print(f"Order: {S.order}")
    print(f"Elements: {' '.join(S.labels)}")
    print(f"Idempotents: {_fmt_set(S, S.idempotents())}")
    print(f"R-classes: {' '.join(_fmt_set(S, c) for c in green.r_classes)}")
    print(f"L-classes: {' '.join(_fmt_set(S, c) for c in green.l_classes)}")
    print(f"H-classes: {' '.join(_fmt_set(S, c) for c in green.h_classes)}")
    j_parts = [_fmt_set(S, c) + ("*" if regular else "")
               for c, regular in zip(green.j_classes, green.regular_j)]
    print(f"J-classes (* regular): {' '.join(j_parts)}")
    print(f"In ER (<E(S)> R-trivial): {'yes' if is_in_ER(S) else 'no'}")
    print(f"In ER (injective R-class actions): {'yes' if is_in_ER_via_injectivity(S) else 'no'}")
    return EXIT_OK


def cmd_kernel(args, limits: Limits) -> int:
    S = _load(args)
    t2 = type2_partition(S)
    print(f"K_G(S): {_fmt_set(S, t2.kernel)}")
    for r, block_ids in enumerate(t2.per_r_class):
        blocks = " ".join(_fmt_set(S, t2.blocks[b]) for b in block_ids)
        print(f"R-class {_fmt_set(S, t2.green.r_classes[r])}: {blocks}")
    return EXIT_OK


def cmd_pointlikes(args, limits: Limits) -> int:
    S = _load(args)
    cr = construct_ER(S, limits)
    labels = S.labels
    maximal = [X.format(labels) for X in max_pointlikes(cr)]
    tested = None
    if args.test:
        X = _parse_subset(S, args.test)
        tested = {"subset": X.format(labels), "pointlike": is_pointlike(S, X, limits, result=cr)}

    if args.json or args.output:
        data = {
            "order": S.order,
            "labels": list(labels),
            "rounds": cr.iterations,
            "trace": [[X.format(labels) for X in added] for added in cr.trace],
            "complex": cr.complex.format(),
            "max_pointlikes": maximal,
        }
        if tested is not None:
            data["test"] = tested
        _write_json(args, data)
        if args.json:
            return EXIT_OK

    print(f"C_ER(S): {len(cr.complex)} members after {cr.iterations} round(s)")
    for i, added in enumerate(cr.trace, start=1):
        print(f"  round {i}: added {' '.join(X.format(labels) for X in added)}")
    print(f"Maximal pointlikes: {' '.join(maximal)}")
    if tested is not None:
        print(f"{tested['subset']} is {'' if tested['pointlike'] else 'not '}ER-pointlike")
    return EXIT_OK


def cmd_automaton(args, limits: Limits) -> int:
    S = _load(args)
    cr = construct_ER(S, limits)
    sd = build_stable(S, cr, limits=limits)
    gg = build_global_group(build_local_groups(sd), S.order, limits)
    fa = build_automaton(S, sd, gg, limits, reachable_only=args.reachable_only)
    ts = transition_semigroup(fa, limits)
    wm = witness_relational_morphism(S, fa, ts)
    sizes = {"complex": len(cr.complex), "fixed": len(sd.fixed), "group": len(gg),
             "states": len(fa), "transition": len(ts)}

    if args.json or args.output:
        _write_json(args, {"automaton": automaton_to_dict(fa), "sizes": sizes,
                           "witness": witness_to_dict(S, wm)})
        if args.json:
            return EXIT_OK

    print("Sizes: " + ", ".join(f"{k}={v}" for k, v in sizes.items()))
    labels = S.labels
    print("State  X / d / g  -> flow  | " + " ".join(labels))
    for q, state in enumerate(fa.states):
        if state is None:
            name = "init"
        else:
            X, d, g = state
            name = f"{sd.subset(X).format(labels)} / d{d} / g{g} -> {fa.flow[q].format(labels)}"
        print(f"{q:5d}  {name}  | {' '.join(str(t) for t in fa.delta[q])}")
    print(f"Witness morphism: {len(wm.pairs)} pairs")
    for t, fiber in wm.fibers.items():
        print(f"  t{t}: fiber {fiber.format(labels)}")
    return EXIT_OK


def cmd_verify(args, limits: Limits) -> int:
    S = _load(args)
    report = certify(S, limits, strict_preorder=args.strict_preorder)
    if args.docx:
        ExportManager().export_report_to_word(report, args.docx)
    _write_json(args, report.to_dict())
    if not args.json:
        print(f"Maximal pointlikes: {' '.join(report.max_pointlikes)}")
        print(f"|C_ER|={report.complex_size} |F|={report.fixed_size} |G|={report.group_order} "
              f"|Q|={report.state_count} |T|={report.transition_size}")
        for name, value in report.flags.items():
            print(f"  {'ok  ' if value else 'FAIL'} {name}")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_catalog(args, limits: Limits) -> int:
    if args.max_order > 3 and not args.long:
        print("Orders above 3 take a long time; pass --long to run them", file=sys.stderr)
        return EXIT_INPUT
    rows = run_catalog(args.max_order, jobs=args.jobs, limits=limits)
    if args.xlsx:
        ExportManager().export_catalog_to_excel(rows, args.xlsx)
    if args.json or args.output:
        _write_json(args, [
            {"entry": row.entry_id, "order": row.order, "table": [list(r) for r in row.table],
             "failure": row.failure, "report": row.report.to_dict() if row.report else None}
            for row in rows])
    if not args.json:
        for row in rows:
            if row.ok:
                status = "ok"
            elif row.report is not None:
                status = "FAIL " + ",".join(row.report.failed_flags())
            else:
                status = f"{row.failure}: {row.detail}"
            print(f"#{row.entry_id:<4d} order {row.order}  {status}")
        passed = sum(1 for row in rows if row.ok)
        print(f"{passed}/{len(rows)} entries certified")

    if all(row.ok for row in rows):
        return EXIT_OK
    if any(row.failure == "invariant" or (row.report is not None and not row.report.ok) for row in rows):
        return EXIT_VIOLATION
    return EXIT_GUARD


def cmd_limits(args, limits: Limits) -> int:
    settings = SettingsManager()
    if args.action == "set":
        if args.name is None or args.value is None:
            print("limits set needs NAME and VALUE", file=sys.stderr)
            return EXIT_INPUT
        if not settings.set_limit(args.name, args.value):
            print(f"Could not store {args.name}={args.value}", file=sys.stderr)
            return EXIT_INPUT
    elif args.action == "reset":
        settings.reset_to_defaults()
    for name, value in settings.get_limits().to_dict().items():
        print(f"{name} = {value}")
    return EXIT_OK


def cmd_samples(args, limits: Limits) -> int:
    for path in ResourceManager().list_samples():
        print(path.stem)
    return EXIT_OK


def _parse_limit(text: str):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return name.strip(), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"limit value must be an integer, got {value!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="erpointlikes", description=get_about_text().strip())
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {get_version_string()}")
    parser.add_argument("--verbose", "-v", action="store_true", help="log progress to stderr")
    parser.add_argument("--no-log-file", action="store_true", help="do not write a log file")
    parser.add_argument("--limit", action="append", type=_parse_limit, default=[], metavar="NAME=VALUE",
                        help="override a size guard for this run (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="order, idempotents, Green's classes, ER membership")
    p.add_argument("file")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("kernel", help="group kernel and type-II blocks")
    p.add_argument("file")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("pointlikes", help="C_ER(S), its trace and maximal members")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--output", metavar="PATH", help="also save the JSON document to PATH")
    p.add_argument("--test", metavar="LABELS", help="comma-separated subset to test, e.g. c1,c2")
    p.set_defaults(func=cmd_pointlikes)

    p = sub.add_parser("automaton", help="flow automaton and witness morphism")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--output", metavar="PATH", help="also save the JSON document to PATH")
    p.add_argument("--reachable-only", action="store_true", help="keep only states reachable from init")
    p.set_defaults(func=cmd_automaton)

    p = sub.add_parser("verify", help="full certification report")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--output", metavar="PATH", help="also save the JSON document to PATH")
    p.add_argument("--docx", metavar="PATH", help="also write the report as a Word document")
    p.add_argument("--strict-preorder", action="store_true",
                   help="compare pointer pairs only when their group components agree")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="certify every semigroup up to a given order")
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--long", action="store_true", help="allow order 4")
    p.add_argument("--json", action="store_true")
    p.add_argument("--output", metavar="PATH", help="also save the JSON document to PATH")
    p.add_argument("--xlsx", metavar="PATH", help="also write an Excel summary")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("limits", help="show or change stored size guards")
    p.add_argument("action", choices=("show", "set", "reset"), nargs="?", default="show")
    p.add_argument("name", nargs="?")
    p.add_argument("value", nargs="?", type=int)
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("samples", help="list bundled sample semigroups")
    p.set_defaults(func=cmd_samples)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and return its exit code"""
    args = build_parser().parse_args(argv)

    setup_logging(log_level=logging.DEBUG if args.verbose else logging.INFO,
                  console_level=logging.INFO if args.verbose else logging.WARNING,
                  log_to_file=not args.no_log_file)
    if not args.no_log_file:
        clean_old_logs(days_to_keep=30)

    try:
        limits = SettingsManager().get_limits(dict(args.limit))
        return args.func(args, limits)
    except GuardExceededError as e:
        logger.error(f"Guard exceeded: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GUARD
    except InvariantViolationError as e:
        log_exception(logger, e, "Internal consistency check failed")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except (CayleyFormatError, ValueError, KeyError, OSError) as e:
        logger.error(f"Input error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:
        log_exception(logger, e, "Unexpected error in main")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
