"""Command-line entry point: ``python -m oddcommute <subcommand>``.

JSON (or CSV) goes to stdout and a short human summary to stderr.  Exit
codes: 0 when everything checked passes, 1 on a mismatch with expectations
(or a failed internal consistency check), 2 on bad input or an exceeded
budget.  Timings are left out of the JSON unless ``--timing`` is given so
that identical inputs give byte-identical reports.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import commgraph as cg
from . import criteria as cr
from . import numtheory as nt
from . import sweeps
from .catalog.groups import (EXTRAS, SUITE, GroupFileError, GroupSpec, handle_from_file,
                             load_group, read_group_file)
from .commgraph import EngineError
from .expectations import ExpectationError, compare, load_table
from .perm import ops
from .perm.group import DEFAULT_BUDGET, BudgetExceeded, GroupHandle
from .perm.permutation import Permutation

SCHEMA = "oddcommute.report/1"

FAMILY_ALIASES = {
    "alt": "alternating", "alternating": "alternating",
    "sym": "symmetric", "symmetric": "symmetric",
    "psl": "linear", "linear": "linear",
    "psu": "unitary", "unitary": "unitary",
    "psp": "symplectic", "symplectic": "symplectic",
    "frobenius": "frobenius",
}

SUITE_SELECTORS = {
    "all": lambda name: True,
    "alternating": lambda name: name.startswith("Alt"),
    "sporadic": lambda name: name in ("M11", "M12", "M22", "J1", "J2"),
    "lie": lambda name: not name.startswith("Alt") and name not in ("M11", "M12", "M22", "J1", "J2"),
}


class InputError(ValueError):
    """Bad command-line input; exit code 2."""


# -- group references ---------------------------------------------------------------------


def _family_name(family: str, n: int, q: int | None) -> str:
    return {
        "alternating": f"Alt{n}", "symmetric": f"Sym{n}", "linear": f"PSL{n}({q})",
        "unitary": f"PSU{n}({q})", "symplectic": f"PSp{n}({q})", "frobenius": f"{n}:{q}",
    }[family]


def _family_simple(family: str, n: int, q: int | None) -> bool:
    if family == "alternating":
        return n >= 5
    if family in ("symmetric", "frobenius"):
        return False
    if family == "linear":
        return not (n == 2 and q in (2, 3))
    if family == "unitary":
        return not (n == 3 and q == 2)
    return not (n == 2 and q in (2, 3)) and (n, q) != (4, 2)


def resolve_group(args) -> tuple[GroupHandle, dict]:
    """Build the group named by ``--group``, ``--family`` or ``--file``."""
    chosen = [a for a in ("group", "family", "file") if getattr(args, a, None)]
    if len(chosen) != 1:
        raise InputError("give exactly one of --group, --family or --file")
    budget = args.budget
    if args.group:
        spec = SUITE.get(args.group) or EXTRAS.get(args.group)
        if spec is None:
            raise InputError(f"unknown group {args.group!r}; known: {', '.join(SUITE)}")
        G = load_group(spec, budget)
        meta = {"name": spec.name, "source": "suite" if args.group in SUITE else "extra",
                "simple": spec.expected_simple}
    elif args.family:
        family = FAMILY_ALIASES.get(args.family)
        if family is None:
            raise InputError(f"unknown family {args.family!r}")
        if args.n is None:
            raise InputError("--family needs --n")
        try:
            spec = GroupSpec(_family_name(family, args.n, args.q), family, n=args.n, q=args.q)
            G = load_group(spec, budget)
        except (ValueError, ArithmeticError) as exc:
            raise InputError(str(exc)) from None
        meta = {"name": spec.name, "source": "family", "family": family, "n": args.n,
                "q": args.q, "simple": _family_simple(family, args.n, args.q)}
    else:
        try:
            gf = read_group_file(args.file)
        except FileNotFoundError:
            raise InputError(f"no such file {args.file!r}") from None
        G = handle_from_file(gf, budget)
        meta = {"name": gf.name, "source": "file", "file": args.file, "simple": gf.simple}
    G.element_budget = budget
    G.check_budget()
    meta.update({"order": G.order, "degree": G.degree})
    return G, meta


def parse_rho(text: str | None, G: GroupHandle) -> list[int]:
    odd = list(nt.odd_prime_factors(G.order))
    if text is None or text == "all":
        return odd
    try:
        rho = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise InputError(f"bad --rho {text!r}; use 'all' or a comma-separated prime list") from None
    bad = [p for p in rho if p == 2 or not nt.is_prime(p) or G.order % p]
    if not rho or bad:
        raise InputError(f"--rho must list odd primes dividing |G| = {G.order}; bad: {bad}")
    return rho


# -- report pieces ------------------------------------------------------------------------


def component_rows(G: GroupHandle, part: cg.ComponentPartition) -> list[dict]:
    names = cr.atlas_class_names(G)
    out = []
    for comp, fp in zip(part.components, part.fingerprints):
        out.append({"id": comp.id, "size": comp.size, "orders": list(comp.orders),
                    "big": comp.big,
                    "classes": [{"class": names[c], "order": o, "count": k} for o, c, k in fp]})
    return out


def _criterion(fn, *a) -> dict:
    try:
        return fn(*a).to_dict()
    except (cr.SylowTooLarge, cr.IndexTooLarge) as exc:
        return {"criterion": fn.__name__, "skipped": str(exc)}


def analyze(G: GroupHandle, meta: dict, rho: list[int], table=None) -> dict:
    t0 = time.perf_counter()
    part = cg.components(G, rho)
    report = {
        "schema": SCHEMA, "command": "analyze", "group": meta, "rho": rho,
        "components": component_rows(G, part),
        "big_count": len(part.big()), "small_primes": list(part.small_primes()),
    }
    crit = []
    if len(rho) == 1:
        p = rho[0]
        crit.append(_criterion(cr.bender_equivalence, G, p))
        crit.append(_criterion(cr.p_local_criterion, G, p))
        crit.append({"criterion": "sylow_cyclic", "verdict": cr.sylow_cyclic(G, p)})
    elif meta.get("simple"):
        crit.append(cr.nonabelian_centralizer_scan(G, part).to_dict())
        if part.big() and list(rho) == list(nt.odd_prime_factors(G.order)):
            crit.append(cr.small_component_corollary(G, part, meta["name"]).to_dict())
    report["criteria"] = crit
    expectation = None
    passed = True
    full_rho = list(rho) == list(nt.odd_prime_factors(G.order))
    if table is not None and full_rho and meta["name"] in table:
        row = table[meta["name"]]
        ok, diff = compare(row, part)
        expectation = {"row": row.to_dict(), "passed": ok, "diff": diff}
        passed = ok
    for c in crit:
        if c.get("criterion") == "small_component" and not c["verdict"]:
            passed = False
    report["expectation"] = expectation
    report["passed"] = passed
    report["seconds"] = round(time.perf_counter() - t0, 3)
    return report


def verify_one(name: str, budget: int, table_path: str | None) -> dict:
    """Analyze one suite group against its row; runs in a worker process under ``--jobs``."""
    _, table = load_table(table_path)
    t0 = time.perf_counter()
    G = load_group(SUITE[name], budget)
    part = cg.components(G)
    out = {"group": name, "order": G.order, "big_count": len(part.big()),
           "unique_big": len(part.big()) <= 1,
           "found": {"big": [list(b) for b in sorted(part.big_prime_sets())],
                     "small": list(part.small_primes())}}
    row = table.get(name)
    if row is None:
        out.update(passed=False, diff={"row": "missing"})
    else:
        ok, diff = compare(row, part)
        out.update(expected={"big": [list(b) for b in row.big], "small": list(row.small)},
                   provenance=row.provenance, passed=ok and out["unique_big"], diff=diff)
    out["seconds"] = round(time.perf_counter() - t0, 3)
    return out


# -- output -------------------------------------------------------------------------------


def _strip_timing(obj, keep: bool):
    if keep:
        return obj
    if isinstance(obj, dict):
        return {k: _strip_timing(v, keep) for k, v in obj.items() if k != "seconds"}
    if isinstance(obj, list):
        return [_strip_timing(v, keep) for v in obj]
    return obj


def emit(report: dict, fmt: str, csv_rows: list[dict], timing: bool):
    if fmt == "csv":
        buf = io.StringIO()
        if csv_rows:
            w = csv.DictWriter(buf, fieldnames=list(csv_rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(csv_rows)
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(json.dumps(_strip_timing(report, timing), indent=2) + "\n")


def _sets(v) -> str:
    return " ".join("{" + ",".join(map(str, s)) + "}" for s in v) if v and isinstance(v[0], list) \
        else "{" + ",".join(map(str, v)) + "}"


def say(msg: str):
    print(msg, file=sys.stderr)


# -- subcommands --------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    G, meta = resolve_group(args)
    rho = parse_rho(args.rho, G)
    _, table = load_table(args.expectations)
    report = analyze(G, meta, rho, table)
    rows = [{"group": meta["name"], "component": c["id"], "size": c["size"],
             "orders": " ".join(map(str, c["orders"])), "big": c["big"],
             "classes": " ".join(f"{x['class']}:{x['count']}" for x in c["classes"])}
            for c in report["components"]]
    emit(report, args.format, rows, args.timing)
    big = [c["orders"] for c in report["components"] if c["big"]]
    say(f"{meta['name']} (order {G.order}): {len(report['components'])} components, "
        f"big {_sets(big) if big else 'none'}, small primes {_sets(report['small_primes'])}")
    for c in report["criteria"]:
        say(f"  {c['criterion']}: {c.get('verdict', c.get('skipped'))}")
    if report["expectation"] is not None:
        say(f"  expectation: {'pass' if report['expectation']['passed'] else 'FAIL'}")
    return 0 if report["passed"] else 1


def cmd_verify_tables(args) -> int:
    version, table = load_table(args.expectations)
    selector = args.suite
    if selector in SUITE_SELECTORS:
        names = [n for n in SUITE if SUITE_SELECTORS[selector](n)]
    else:
        names = [n.strip() for n in selector.split(",") if n.strip()]
        unknown = [n for n in names if n not in SUITE]
        if unknown:
            raise InputError(f"unknown suite groups: {unknown}")
    stray = [g for g in table if g not in SUITE]
    if stray:
        raise InputError(f"expectation rows for groups outside the suite: {stray}")
    t0 = time.perf_counter()
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(verify_one, names, [args.budget] * len(names),
                                 [args.expectations] * len(names)))
    else:
        rows = [verify_one(n, args.budget, args.expectations) for n in names]
    passed = all(r["passed"] for r in rows)
    report = {"schema": SCHEMA, "command": "verify-tables", "table_version": version,
              "suite": selector, "rows": rows, "passed": passed,
              "seconds": round(time.perf_counter() - t0, 3)}
    csv_rows = [{"group": r["group"], "passed": r["passed"], "big_count": r["big_count"],
                 "big_expected": _sets(r.get("expected", {}).get("big", [])),
                 "big_found": _sets(r["found"]["big"]),
                 "small_expected": _sets(r.get("expected", {}).get("small", [])),
                 "small_found": _sets(r["found"]["small"])} for r in rows]
    emit(report, args.format, csv_rows, args.timing)
    for r in rows:
        line = f"{'pass' if r['passed'] else 'FAIL'}  {r['group']:<9} big {_sets(r['found']['big']) if r['found']['big'] else 'none'}" \
               f"  small {_sets(r['found']['small'])}"
        if r["diff"]:
            line += f"  diff {json.dumps(r['diff'])}"
        say(line)
    say(f"{sum(r['passed'] for r in rows)}/{len(rows)} rows pass")
    return 0 if passed else 1


def cmd_nt_verify(args) -> int:
    if max(args.q_max, args.limit, args.p_max) > 1 << 31 or args.n_max > 64:
        raise InputError("ranges must stay within 64-bit arithmetic (q, limit < 2**31, n <= 64)")
    results = sweeps.run_all(args.q_max, args.n_max, args.limit, args.p_max)
    passed = all(r.passed for r in results)
    report = {"schema": SCHEMA, "command": "nt-verify",
              "ranges": {"q_max": args.q_max, "n_max": args.n_max, "limit": args.limit,
                         "p_max": args.p_max},
              "sweeps": [r.to_dict() for r in results], "passed": passed}
    rows = [{"sweep": r.name, "passed": r.passed, "checked": r.checked,
             "recovered": json.dumps(r.recovered)} for r in results]
    emit(report, args.format, rows, args.timing)
    for r in results:
        say(f"{'pass' if r.passed else 'FAIL'}  {r.name}: {r.recovered}")
    return 0 if passed else 1


def select_classes(G: GroupHandle, args) -> list[ops.ConjugacyClass]:
    classes = ops.conjugacy_classes(G)
    names = cr.atlas_class_names(G)
    if args.element:
        try:
            x = Permutation.parse(args.element, G.degree)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if not G.contains(x):
            raise InputError("element is not in the group")
        return [classes[int(ops.class_labels(G)[G.rank(x)])]]
    if args.cls:
        found = [c for c in classes if names[c.index] == args.cls]
        if not found:
            raise InputError(f"no class named {args.cls!r}")
        return found
    if args.order is None:
        raise InputError("select a class with --class, --order or --element")
    found = [c for c in classes if c.element_order == args.order]
    if args.centralizer is not None:
        found = [c for c in found if c.centralizer.order == args.centralizer]
    if not found:
        raise InputError("no class matches the selection")
    return found


def cmd_class_connected(args) -> int:
    G, meta = resolve_group(args)
    selected = select_classes(G, args)
    names = cr.atlas_class_names(G)
    rows = []
    for cls in selected:
        if cls.element_order == 2 or not nt.is_prime(cls.element_order):
            raise InputError(f"class {names[cls.index]} does not have odd prime order")
        part = cg.class_components(G, cls)
        rows.append({"class": names[cls.index], "order": cls.element_order, "size": cls.size,
                     "centralizer_order": cls.centralizer.order,
                     "representative": cls.representative.to_cycle_string(),
                     "connected": len(part) == 1, "components": len(part)})
    ok = True
    if args.expect is not None:
        ok = all(r["connected"] == (args.expect == "connected") for r in rows)
    report = {"schema": SCHEMA, "command": "class-connected", "group": meta, "classes": rows,
              "passed": ok}
    emit(report, args.format, [{k: v for k, v in r.items() if k != "representative"}
                               for r in rows], args.timing)
    for r in rows:
        state = "connected" if r["connected"] else f"{r['components']} components"
        say(f"{meta['name']} class {r['class']} (size {r['size']}, "
            f"|C| = {r['centralizer_order']}): {state}")
    return 0 if ok else 1


# -- argument parsing -----------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, group_ref: bool):
    if group_ref:
        p.add_argument("--group", help="suite group name, e.g. M12 or PSL2(7)")
        p.add_argument("--family", help="alt, sym, psl, psu, psp or frobenius")
        p.add_argument("--n", type=int)
        p.add_argument("--q", type=int)
        p.add_argument("--file", help="group file (1-based cycle notation)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="largest group order that may be enumerated")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds in the JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oddcommute",
                                     description="Commuting graphs on elements of odd prime order.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="components, classification and criteria for one group")
    _common(p, True)
    p.add_argument("--rho", help="'all' (default), a prime, or a comma-separated prime list")
    p.add_argument("--expectations", help="alternative expectation table (JSON)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-tables", help="replay the expectation table over the suite")
    _common(p, False)
    p.add_argument("--suite", default="all",
                   help="all, alternating, sporadic, lie, or comma-separated group names")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--expectations", help="alternative expectation table (JSON)")
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("nt-verify", help="number-theory sweeps against brute force")
    _common(p, False)
    p.add_argument("--q-max", type=int, default=128)
    p.add_argument("--n-max", type=int, default=24)
    p.add_argument("--limit", type=int, default=10_000, help="prime-power bound for smoothness sweeps")
    p.add_argument("--p-max", type=int, default=1000, help="prime bound for cyclotomic sweeps")
    p.set_defaults(func=cmd_nt_verify)

    p = sub.add_parser("class-connected", help="connectivity of the commuting graph on one class")
    _common(p, True)
    p.add_argument("--class", dest="cls", help="class name such as 3A")
    p.add_argument("--order", type=int, help="element order of the class")
    p.add_argument("--centralizer", type=int, help="centralizer order, to pick among classes")
    p.add_argument("--element", help="an element of the class, 1-based cycle notation")
    p.add_argument("--expect", choices=("connected", "disconnected"))
    p.set_defaults(func=cmd_class_connected)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GroupFileError, ExpectationError, BudgetExceeded, OverflowError,
            FileNotFoundError) as exc:
        say(f"error: {exc}")
        return 2
    except EngineError as exc:
        say(f"consistency check failed: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
