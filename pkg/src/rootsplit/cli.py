"""Command-line surface.

Subcommands: build, validate, subsystems, weights, split, wolf, classify.
Exit codes: 0 success, 1 usage error, 2 internal invariant violation.
Stdout is byte-identical across reruns; timing goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog
from .linalg import format_rational
from .pipeline import (
    InvariantViolation,
    ParseError,
    classify_all,
    classify_pair,
    describe_subsystem,
    parse_g_spec,
    parse_h_spec,
)
from .report import FORMATS, certificate_dict, emit
from .rootcore import RootsplitError, validate_root_system
from .splitting import case_analysis, find_splittings, wolf_certificate
from .subalgebra import enumerate_closed_subsystems, isotropy_weights, wolf_subsystem


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(1)


def _vec_json(v):
    return [format_rational(c) for c in v]


def _emit_json(doc, args) -> int:
    data = (json.dumps(doc, indent=2) + "\n").encode()
    out = sys.stdout.buffer
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        out.write(data)
    return 0


def _cmd_build(args) -> int:
    label, system = parse_g_spec(args.g)
    return _emit_json(
        {
            "g": label,
            "ambient_dim": system.ambient_dim,
            "rank": system.rank,
            "root_count": len(system.roots),
            "roots": [_vec_json(r) for r in system.roots],
        },
        args,
    )


def _cmd_validate(args) -> int:
    if args.roots:
        data = json.loads(args.roots)
        from fractions import Fraction

        vectors = [tuple(Fraction(str(c)) for c in row) for row in data]
    else:
        _, system = parse_g_spec(args.g)
        vectors = list(system.roots)
    report = validate_root_system(vectors)
    return _emit_json(
        {
            "valid": report.ok,
            "violations": [
                {"axiom": v.axiom, "message": v.message,
                 "witness": [_vec_json(w) for w in v.witness]}
                for v in report.violations
            ],
        },
        args,
    )


def _cmd_subsystems(args) -> int:
    label, system = parse_g_spec(args.g)
    subs = enumerate_closed_subsystems(system, dedup=not args.no_dedup)
    return _emit_json(
        {
            "g": label,
            "dedup": not args.no_dedup,
            "count": len(subs),
            "subsystems": [
                {
                    "description": describe_subsystem(h),
                    "torus_corank": h.torus_corank,
                    "roots": [_vec_json(r) for r in h.roots],
                }
                for h in subs
            ],
        },
        args,
    )


def _cmd_weights(args) -> int:
    label, system = parse_g_spec(args.g)
    h = parse_h_spec(system, args.h)
    w = isotropy_weights(system, h)
    return _emit_json(
        {
            "g": label,
            "h": describe_subsystem(h),
            "dim_M": w.dim_M,
            "quaternionic_n": format_rational(w.quaternionic_n),
            "weights": [_vec_json(x) for x in w.weights],
        },
        args,
    )


def _cmd_split(args) -> int:
    label, system = parse_g_spec(args.g)
    h = parse_h_spec(system, args.h)
    w = isotropy_weights(system, h)
    certs = find_splittings(w)
    return _emit_json(
        {
            "g": label,
            "h": describe_subsystem(h),
            "certificates": [
                certificate_dict(c, case_analysis(w, c).tag) for c in certs
            ],
        },
        args,
    )


def _cmd_wolf(args) -> int:
    label, system = parse_g_spec(args.g)
    h = wolf_subsystem(system)
    cert = wolf_certificate(system)
    return _emit_json(
        {
            "g": label,
            "h": describe_subsystem(h),
            "h_roots": [_vec_json(r) for r in h.roots],
            "certificate": certificate_dict(cert),
        },
        args,
    )


def _cmd_classify(args) -> int:
    if args.g is not None and args.h is not None:
        report = classify_pair(args.g, args.h)
    elif args.max_rank is not None:
        report = classify_all(
            args.max_rank,
            series=args.series,
            include_products=args.include_products,
            jobs=args.jobs,
            cache_dir=args.cache_dir,
        )
        print(f"elapsed: {report.elapsed_seconds:.2f}s", file=sys.stderr)
    else:
        raise ParseError("classify needs either G and H, or --max-rank")
    dest = open(args.output, "wb") if args.output else sys.stdout.buffer
    try:
        _, code = emit(report, args.format, dest)
    finally:
        if args.output:
            dest.close()
    return code


def main(argv=None) -> int:
    parser = _Parser(prog="rootsplit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_h=False):
        p.add_argument("--output", "-o", default=None, help="write to file instead of stdout")

    p = sub.add_parser("build", help="emit a catalog root system")
    p.add_argument("g", help="label, e.g. B3 or A1+A1")
    common(p)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("validate", help="check the root system axioms")
    p.add_argument("g", nargs="?", help="catalog label")
    p.add_argument("--roots", default=None, help="explicit JSON root list")
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("subsystems", help="enumerate closed subsystems")
    p.add_argument("g")
    p.add_argument("--no-dedup", action="store_true",
                   help="do not dedup by Weyl equivalence")
    common(p)
    p.set_defaults(func=_cmd_subsystems)

    p = sub.add_parser("weights", help="isotropy weight set of a pair")
    p.add_argument("g")
    p.add_argument("h", help="'torus', 'wolf', 'TYPE#k' or a JSON root list")
    common(p)
    p.set_defaults(func=_cmd_weights)

    p = sub.add_parser("split", help="search for quaternionic weight splittings")
    p.add_argument("g")
    p.add_argument("h")
    common(p)
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("wolf", help="Wolf subsystem and certificate")
    p.add_argument("g")
    common(p)
    p.set_defaults(func=_cmd_wolf)

    p = sub.add_parser("classify", help="classify one pair or the whole catalog")
    p.add_argument("g", nargs="?", default=None)
    p.add_argument("h", nargs="?", default=None)
    p.add_argument("--max-rank", type=int, default=None)
    p.add_argument("--series", nargs="*", default=None,
                   help="restrict to these series letters")
    p.add_argument("--include-products", action="store_true")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-dedup", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_classify)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except (ParseError, RootsplitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
