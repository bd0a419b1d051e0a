"""Command-line interface.

Input is a presentation file path or ``catalog:<name>``.  Reports print as
plain text or, with ``--json``, as a versioned JSON document whose ``body``
is deterministic (integers rendered as decimal strings, no timestamps);
wall-clock timing is carried outside the body.

Exit codes: 0 success, 2 invalid input, 3 bound exceeded, 4 internal
cross-check failure.
"""

import argparse
import hashlib
import json
import random
import sys
import time
from math import prod

from . import bogomolov as bog
from . import catalog
from . import cover as cov
from . import pc
from .errors import (BoundExceeded, CrossCheckError, CurlywedgeError,
                     FormatError, InconsistencyError)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BOUND = 3
EXIT_CROSSCHECK = 4


def _load_input(spec):
    """Resolve an input spec to (presentation, identity dict)."""
    if spec.startswith("catalog:"):
        name = spec.split(":", 1)[1]
        try:
            entry = catalog.get(name)
        except KeyError as exc:
            raise FormatError(exc.args[0]) from None
        source = entry.source
        ident = {"kind": "catalog", "name": name}
    else:
        try:
            with open(spec, "r", encoding="utf-8") as fh:
                source = fh.read()
        except OSError as exc:
            raise FormatError(f"cannot read {spec}: {exc}") from None
        ident = {"kind": "file", "path": spec}
    ident["sha256"] = hashlib.sha256(source.encode()).hexdigest()
    return pc.parse_presentation(source), ident


def _emit(args, command, ident, body, started):
    if args.json:
        doc = {
            "schema": "1",
            "command": command,
            "input": ident,
            "body": body,
            "timing_seconds": f"{time.perf_counter() - started:.3f}",
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        _print_plain(body)


def _print_plain(body, indent=""):
    for key, value in body.items():
        if isinstance(value, dict):
            print(f"{indent}{key}:")
            _print_plain(value, indent + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{indent}{key}:")
            for item in value:
                _print_plain(item, indent + "  ")
        else:
            print(f"{indent}{key}: {_fmt(value)}")


def _fmt(value):
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(str(v) for v in value) + "]"
    if value is None:
        return "-"
    return str(value)


def cmd_info(args, started):
    p, ident = _load_input(args.input)
    cls = pc.nilpotency_class(p, args.bound)
    body = {
        "name": p.name,
        "order": str(p.order()),
        "consistent": True,
        "abelianization": [str(d) for d in pc.abelianization(p)],
        "derived_order": str(len(pc.derived_subgroup(p, args.bound))),
        "nilpotency_class": str(cls) if cls is not None else None,
    }
    _emit(args, "info", ident, body, started)
    return EXIT_OK


def cmd_multiplier(args, started):
    p, ident = _load_input(args.input)
    e = cov.exterior_square_data(p, args.bound, args.cover_bound)
    body = {
        "name": p.name,
        "order": str(p.order()),
        "multiplier": [str(d) for d in e.multiplier],
        "multiplier_order": str(e.exterior_square_order // e.derived_order),
        "derived_order": str(e.derived_order),
        "exterior_square_order": str(e.exterior_square_order),
    }
    _emit(args, "multiplier", ident, body, started)
    return EXIT_OK


def cmd_wedge(args, started):
    p, ident = _load_input(args.input)
    e = cov.exterior_square_data(p, args.bound, args.cover_bound)
    report = bog.bogomolov_multiplier(e, args.method, args.bound)
    body = {
        "name": p.name,
        "derived_order": str(e.derived_order),
        "multiplier": [str(d) for d in e.multiplier],
        "exterior_square_order": str(e.exterior_square_order),
        "m0_index": str(report.m0_index),
        "curly_wedge_order": str(report.curly_wedge_order),
        "method": report.method,
    }
    _emit(args, "wedge", ident, body, started)
    return EXIT_OK


def cmd_bogomolov(args, started):
    p, ident = _load_input(args.input)
    e = cov.exterior_square_data(p, args.bound, args.cover_bound)
    report = bog.bogomolov_multiplier(e, args.method, args.bound)
    _emit(args, "bogomolov", ident, report.as_dict(), started)
    return EXIT_OK


_NORMAL_KEYWORDS = ("derived", "center", "trivial", "all")


def _resolve_normal(p, spec, bound):
    if spec is None:
        raise FormatError("fiveterm requires --normal")
    if spec == "derived":
        return pc.derived_subgroup(p, bound)
    t = pc.group_table(p, bound)
    if spec == "center":
        return {t.elements[x] for x in range(t.order)
                if all(t.table[x][y] == t.table[y][x]
                       for y in t.generator_indices())}
    if spec == "trivial":
        return {pc.identity(p)}
    if spec == "all":
        return set(t.elements)
    seeds = []
    for word in spec.split(","):
        atoms = word.split()
        if not atoms:
            raise FormatError("empty generator word in --normal")
        seeds.append(pc.collect(p, pc._parse_word(atoms)))
    closure = t.normal_closure([t.index[s] for s in seeds])
    return {t.elements[i] for i in closure}


def cmd_fiveterm(args, started):
    p, ident = _load_input(args.input)
    n_set = _resolve_normal(p, args.normal, args.bound)
    report = bog.five_term_check(p, n_set, args.bound, args.cover_bound)
    _emit(args, "fiveterm", ident, report.as_dict(), started)
    return EXIT_OK if report.passed else EXIT_CROSSCHECK


def cmd_catalog(args, started):
    if args.action == "list":
        body = {"entries": catalog.list_names()}
        if args.json:
            _emit(args, "catalog", {"kind": "catalog"}, body, started)
        else:
            for name in catalog.list_names():
                print(name)
        return EXIT_OK
    entry = catalog.get(args.name)
    sys.stdout.write(entry.source)
    return EXIT_OK


# verification-suite Frobenius configuration: kernel spec per catalog name
_FROBENIUS_KERNELS = {"S3": "derived", "A4": "derived"}


def _verify_group(p, bound, cover_bound, samples, rng, frobenius_kernel=None):
    """Run the verification suite on one group; returns (checks, ok)."""
    checks = []

    def record(label, ok):
        checks.append((label, bool(ok)))

    record("presentation consistent", pc.is_consistent(p))
    els = pc.elements(p, bound)
    ident = pc.identity(p)
    ok = True
    for _ in range(samples):
        a, b, c = (rng.choice(els) for _ in range(3))
        if pc.multiply(p, pc.multiply(p, a, b), c) != \
                pc.multiply(p, a, pc.multiply(p, b, c)):
            ok = False
        if pc.multiply(p, a, pc.inverse(p, a)) != ident:
            ok = False
    record(f"group laws on {samples} random samples", ok)

    e = cov.exterior_square_data(p, bound, cover_bound)
    ok = True
    for _ in range(samples):
        x, y = rng.choice(els), rng.choice(els)
        w = e.wedge(x, y)
        # compatibility with the commutator on group parts
        if w.gpart != pc.commutator(p, x, y):
            ok = False
        # lift independence: random tail offsets must cancel exactly
        sx = tuple(rng.randrange(-3, 4) for _ in range(e.cover.ntails))
        sy = tuple(rng.randrange(-3, 4) for _ in range(e.cover.ntails))
        w2 = cov.commutator_of_lifts(
            e.cover, cov.CoverElement(tuple(x), sx),
            cov.CoverElement(tuple(y), sy))
        if w2 != w:
            ok = False
    record(f"wedge identities on {samples} random samples", ok)

    report = bog.bogomolov_multiplier(e, "both", bound)
    record("M0 oracle equality (classes vs pairs)", True)  # no CrossCheckError
    record("|GvG| = |derived| * |M|",
           report.exterior_square_order ==
           report.derived_order * prod(report.multiplier, start=1))
    record("|GwG| = |derived| * |B0|",
           report.curly_wedge_order ==
           report.derived_order * prod(report.bogomolov, start=1))

    cls = pc.nilpotency_class(p, bound)
    if cls is not None and cls <= 2:
        c2 = bog.class2_check(p, bound)
        record("class-2 reduction |B0| = |ker Phi|/|ker Psi|", c2["passed"])
        try:
            be = bog.blackburn_evens_multiplier_order(p, bound)
            record("mod-p multiplier order formula",
                   be == prod(report.multiplier, start=1))
        except ValueError:
            pass
    if frobenius_kernel is not None:
        n_set = _resolve_normal(p, frobenius_kernel, bound)
        fr = bog.frobenius_checks(p, n_set, bound)
        record("Frobenius commuting-pair partition", fr["passed"])
    return checks, all(ok for _, ok in checks)


def cmd_verify(args, started):
    rng = random.Random(20260823)
    targets = []
    if args.all_catalog:
        for name in catalog.list_names():
            targets.append((catalog.get(name).presentation(),
                            _FROBENIUS_KERNELS.get(name)))
    else:
        if args.input is None:
            raise FormatError("verify needs an input or --all-catalog")
        p, _ = _load_input(args.input)
        targets.append((p, None))
    all_ok = True
    results = []
    for p, frob in targets:
        checks, ok = _verify_group(p, args.bound, args.cover_bound,
                                   args.samples, rng, frob)
        all_ok = all_ok and ok
        results.append({"name": p.name,
                        "checks": [{"check": c, "passed": o}
                                   for c, o in checks],
                        "passed": ok})
        if not args.json:
            for c, o in checks:
                print(f"[{'pass' if o else 'FAIL'}] {p.name}: {c}")
    if args.json:
        _emit(args, "verify", {"kind": "suite"},
              {"groups": results, "passed": all_ok}, started)
    return EXIT_OK if all_ok else EXIT_CROSSCHECK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit a deterministic JSON report")
    common.add_argument("--bound", type=int, default=pc.DEFAULT_ELEMENT_BOUND,
                        help="element enumeration bound (default 5000)")
    common.add_argument("--cover-bound", type=int,
                        default=cov.DEFAULT_COVER_BOUND,
                        help="cover-derived search bound (default 200000)")
    parser = argparse.ArgumentParser(
        prog="curlywedge",
        description="Exterior squares, Schur multipliers and Bogomolov "
                    "multipliers of finite solvable groups")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("info", parents=[common],
                        help="order, consistency, abelianization")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("multiplier", parents=[common], help="Schur multiplier invariants")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_multiplier)

    sp = sub.add_parser("wedge", parents=[common], help="exterior square orders and M0 data")
    sp.add_argument("input")
    sp.add_argument("--method", choices=["classes", "pairs", "both"],
                    default="classes")
    sp.set_defaults(func=cmd_wedge)

    sp = sub.add_parser("bogomolov", parents=[common], help="full Bogomolov multiplier report")
    sp.add_argument("input")
    sp.add_argument("--method", choices=["classes", "pairs", "both"],
                    default="classes")
    sp.set_defaults(func=cmd_bogomolov)

    sp = sub.add_parser("fiveterm", parents=[common], help="five-term exact sequence check")
    sp.add_argument("input")
    sp.add_argument("--normal", help="comma-separated generator words, or "
                    "one of: " + ", ".join(_NORMAL_KEYWORDS))
    sp.set_defaults(func=cmd_fiveterm)

    sp = sub.add_parser("catalog", parents=[common], help="list or emit built-in presentations")
    sp.add_argument("action", choices=["list", "emit"])
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("verify", parents=[common], help="run the verification suites")
    sp.add_argument("input", nargs="?")
    sp.add_argument("--all-catalog", action="store_true")
    sp.add_argument("--samples", type=int, default=100)
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "catalog" and args.action == "emit" and not args.name:
        parser.error("catalog emit needs a name")
    started = time.perf_counter()
    try:
        return args.func(args, started)
    except (FormatError, InconsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, InconsistencyError) and exc.failures:
            for f in exc.failures:
                print(f"failing overlap: {f}", file=sys.stderr)
        return EXIT_INVALID
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_INVALID
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except CrossCheckError as exc:
        print(f"internal cross-check failure: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except CurlywedgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
