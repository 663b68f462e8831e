"""``bcblow`` command line."""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import nilbc
from .errors import BCBlowError, ParseError
from .manifest import dumps, load_manifest, preset_manifest_path, run_manifest
from .rrwd import compute_f


def _summary(results: List[dict], out) -> None:
    for res in results:
        status = "PASS" if res["passed"] else "FAIL"
        print(f"{status}  {res['task']} ({res['op']})", file=out)
        if "error" in res:
            print(f"      error: {res['error']}", file=out)
        for c in res["checks"]:
            mark = "ok " if c["passed"] else ("-- " if c.get("informational") else "!! ")
            note = "  (informational)" if c.get("informational") and not c["passed"] else ""
            detail = f"  {c['detail']}" if c["detail"] and not c["passed"] else ""
            print(f"    {mark}{c['label']}{note}{detail}", file=out)
        classes = res.get("classes", {})
        for key in ("total_in_E", "difference", "total", "text", "primitive"):
            if key in classes and isinstance(classes[key], str):
                text = classes[key]
                if "\n" in text:
                    print("    " + text.replace("\n", "\n    "), file=out)
                else:
                    print(f"    {key}: {text}", file=out)
    failed = sum(1 for r in results if not r["passed"])
    print(f"{len(results) - failed}/{len(results)} tasks passed", file=out)


def _run(path, task: Optional[str], out_path: Optional[str], parallel: bool) -> int:
    manifest = load_manifest(path)
    results = run_manifest(manifest, task, parallel)
    if out_path:
        with open(out_path, "w") as fh:
            for res in results:
                fh.write(dumps(res) + "\n")
    _summary(results, sys.stdout)
    return 0 if all(r["passed"] for r in results) else 1


def cmd_run(args) -> int:
    return _run(args.manifest, args.task, args.out, args.parallel)


def cmd_verify(args) -> int:
    return _run(preset_manifest_path(args.preset), None, args.out, args.parallel)


def cmd_rr_series(args) -> int:
    f = compute_f(args.u, args.v, args.degree)
    if args.json:
        print(json.dumps(f.to_json(), sort_keys=True))
    else:
        print(f.table())
    return 0


def cmd_nilbc(args) -> int:
    if args.manifest:
        m = load_manifest(args.manifest)
        structures = m.nilmanifolds
    else:
        se = nilbc.nilmanifold(args.preset)
        structures = {args.preset: se}
    for name, se in structures.items():
        print(f"# {name}  (n={se.n})")
        for k in range(se.n):
            print(f"d w^{k + 1} = {nilbc.format_form(se.d_gen[k], se.n)}")
        if args.dims or not args.exact:
            print(nilbc.format_table(nilbc.bc_table(se), se.n))
        if args.exact:
            holo, anti = args.exact.split("|")
            form = nilbc.monomial(se.n, [int(c) for c in holo], [int(c) for c in anti])
            print(f"{form}: {nilbc.is_bc_exact(se, form)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bcblow", description="Bott-Chern classes of blow-ups.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run the tasks of a manifest")
    p.add_argument("manifest")
    p.add_argument("--task", help="run only the task with this name")
    p.add_argument("--out", help="write one JSON report per task to this file")
    p.add_argument("--parallel", action="store_true", help="run independent tasks concurrently")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="run a shipped preset manifest")
    p.add_argument("--preset", required=True,
                   choices=["surface-point", "threefold-point", "threefold-curve", "iwasawa",
                            "universal-r2", "universal-r3"])
    p.add_argument("--out")
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rr-series", help="coefficient table of the RR-without-denominators series")
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rr_series)

    p = sub.add_parser("nilbc", help="Bott-Chern cohomology of a nilmanifold")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--preset", choices=sorted(nilbc.NILMANIFOLDS))
    g.add_argument("--manifest")
    p.add_argument("--dims", action="store_true", help="print the h^{p,q} table")
    p.add_argument("--exact", metavar="I|J", help="test ddbar-exactness of w^{I|J}, e.g. 12|12")
    p.set_defaults(func=cmd_nilbc)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (BCBlowError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
