"""Command-line drivers: ``reflex <command> ...``.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on bad
input (unreadable or malformed dataset, invalid arguments).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .dataset import dataset_names, load_dataset, load_table1
from .errors import ParseError, ReflexError, ValidationError
from .lattice import enumerate_cosets, pm_classes
from .verify import SCHEMA, Report, jsonable, starsets_report, table1_report, verify_dataset

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(payload: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _emit_report(reports: list[Report], fmt: str, runtime: bool = True) -> int:
    ok = all(r.ok for r in reports)
    if fmt == "json":
        if len(reports) == 1:
            payload = reports[0].as_dict(runtime)
        else:
            payload = {
                "schema": SCHEMA,
                "status": "pass" if ok else "fail",
                "reports": [r.as_dict(runtime) for r in reports],
            }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n\n".join(r.to_text() for r in reports))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lattice_info(args) -> int:
    ds = load_dataset(args.dataset, args.data_dir)
    g = ds.group
    info = {
        "schema": SCHEMA,
        "dataset": ds.name,
        "lattice": ds.lattice_name,
        "rank": ds.lattice.rank,
        "signature": list(ds.lattice.signature),
        "det": ds.lattice.det,
        "invariant_factors": list(g.invariant_factors),
        "order": g.order,
        "candidates": len(ds.candidates),
    }
    facs = " x ".join(f"Z/{f}" for f in g.invariant_factors) or "0"
    text = (
        f"{ds.name}: {ds.lattice_name}\n"
        f"  rank {ds.lattice.rank}, signature {ds.lattice.signature}, det {ds.lattice.det}\n"
        f"  D = {facs}, |D| = {g.order}\n"
        f"  {len(ds.candidates)} candidates"
    )
    _emit(info, text, args.format)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    ds = load_dataset(args.dataset, args.data_dir)
    try:
        norm = Fraction(args.norm) if args.norm is not None else None
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"--norm: {args.norm!r} is not a rational") from None
    cos = enumerate_cosets(ds.group, args.order, norm)
    if args.pm:
        units = pm_classes(cos)
        items = [[u for u in cls] for cls in units]
        kind = "pm_classes"
    else:
        items = cos
        kind = "cosets"
    payload = {
        "schema": SCHEMA,
        "dataset": ds.name,
        "order": args.order,
        "norm": None if norm is None else str(norm),
        "kind": kind,
        "count": len(items),
        "items": jsonable(items),
    }
    if args.pm:
        lines = ["  {" + ", ".join(u.text() for u in cls) + "}" for cls in items]
    else:
        lines = [f"  {u.text()}  order {u.order}, norm {u.norm}" for u in items]
    text = "\n".join([f"{len(items)} {kind.replace('_', ' ')}"] + lines)
    _emit(payload, text, args.format)
    return EXIT_OK


def _dataset_list(arg: str, data_dir) -> list[str]:
    return dataset_names(data_dir) if arg == "all" else [arg]


def cmd_verify(args) -> int:
    reports = []
    for name in _dataset_list(args.dataset, args.data_dir):
        ds = load_dataset(name, args.data_dir)
        reports.append(verify_dataset(ds, jobs=args.jobs))
    if args.dataset == "all":
        reports.append(table1_report(load_table1(directory=args.data_dir)))
    return _emit_report(reports, args.format, not args.no_runtime)


def cmd_starsets(args) -> int:
    ds = load_dataset(args.dataset, args.data_dir)
    if not ds.expected.get("graph"):
        raise ValidationError(f"{ds.name}: dataset has no graph expectations")
    return _emit_report([starsets_report(ds, jobs=args.jobs)], args.format, not args.no_runtime)


def cmd_table1(args) -> int:
    return _emit_report([table1_report(load_table1(args.file, args.data_dir))], args.format, not args.no_runtime)


def cmd_list(args) -> int:
    names = dataset_names(args.data_dir)
    _emit({"schema": SCHEMA, "datasets": names}, "\n".join(names), args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--data-dir", default=None, help="dataset directory (default: $REFLEX_DATA_DIR or packaged data)")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for graph construction; results do not depend on it")
    common.add_argument("--no-runtime", action="store_true", help="omit timing fields from JSON reports")

    p = argparse.ArgumentParser(prog="reflex", description="Discriminant-form and star-set verification.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lattice-info", parents=[common], help="rank, signature and discriminant group")
    s.add_argument("dataset")
    s.set_defaults(func=cmd_lattice_info)

    s = sub.add_parser("enumerate", parents=[common], help="list cosets by order and norm")
    s.add_argument("dataset")
    s.add_argument("--order", type=int, default=None)
    s.add_argument("--norm", default=None, help="norm mod 2 as P/Q")
    s.add_argument("--pm", action="store_true", help="group into {u, -u} classes")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", parents=[common], help="run a dataset's expected block ('all' for every dataset)")
    s.add_argument("dataset")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("starsets", parents=[common], help="compatibility graph, cliques and automorphisms")
    s.add_argument("dataset")
    s.set_defaults(func=cmd_starsets)

    s = sub.add_parser("table1", parents=[common], help="weight identities of the generator table")
    s.add_argument("--file", default=None)
    s.set_defaults(func=cmd_table1)

    s = sub.add_parser("list", parents=[common], help="shipped datasets")
    s.set_defaults(func=cmd_list)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("reflex: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (ParseError, ValidationError) as e:
        print(f"reflex: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ReflexError as e:
        print(f"reflex: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
