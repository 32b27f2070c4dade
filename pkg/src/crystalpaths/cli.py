"""Command-line interface: compute, verify, and manage cached tables.

Commands
--------
kostka       classical or level-restricted generating polynomial
verify       alternating Weyl sum against the direct path count
verify-zero  formal level-zero evaluation plus its pairing certificate
cache        list, build, or clear persisted local-isomorphism tables

Exit codes: 0 on success or verified equality, 1 on a genuine mathematical
inequality, 2 on validation errors.  All JSON output is deterministic for a
fixed configuration.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from typing import Optional

from . import energy
from .bosonic import (
    bosonic_report,
    commutation_hypothesis_warnings,
    level_zero_identity,
    level_zero_pairing,
)
from .kostka import CrystalSpec, kostka_classical, kostka_level
from .laurent import LaurentPoly
from .tableaux import RectShape
from .weights import LevelWeight, fundamental_vector, vadd

SCHEMA_VERSION = 1

_SELECTOR_TERM = re.compile(r"^(\d*)L(\d+)$")


def parse_weight_selector(text: str, n: int, name: str = "weight") -> LevelWeight:
    """Parse symbolic fundamental-weight sums such as L0, 2L0, or L0+L2.

    Raw coordinate vectors are rejected; the symbolic form fixes the lift
    from classical to affine weights unambiguously.
    """
    level = 0
    finite = (0,) * n
    for term in text.replace(" ", "").split("+"):
        match = _SELECTOR_TERM.match(term)
        if not match:
            raise ValueError(
                "%s selector %r is not of the form [coeff]L<index>" % (name, text)
            )
        coeff = int(match.group(1)) if match.group(1) else 1
        index = int(match.group(2))
        if index >= n:
            raise ValueError(
                "%s selector %r uses node %d, outside 0..%d" % (name, text, index, n - 1)
            )
        level += coeff
        for _ in range(coeff):
            finite = vadd(finite, fundamental_vector(index, n))
    return LevelWeight(level, finite, 0)


def parse_shapes(text: str) -> tuple[RectShape, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(RectShape.parse(part) for part in text.split(","))


def parse_partition(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _poly_pairs(poly: LaurentPoly) -> list[list[int]]:
    return [[e, c] for e, c in poly.pairs()]


def _spec_json(spec: CrystalSpec) -> dict:
    out = {"n": spec.n, "shapes": [[s.rows, s.cols] for s in spec.shapes]}
    if spec.level is not None:
        out["level"] = spec.level
    if spec.lam is not None:
        out["Lambda"] = {"level": spec.lam.level, "finite": list(spec.lam.finite)}
    if spec.lam_prime is not None:
        out["LambdaPrime"] = {
            "level": spec.lam_prime.level,
            "finite": list(spec.lam_prime.finite),
        }
    if spec.b0_shape is not None:
        out["b0"] = [spec.b0_shape.rows, spec.b0_shape.cols]
    return out


def _emit(payload: dict, fmt: str):
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ": ")) + "\n")
        return
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if key.endswith("polynomial") and isinstance(value, list):
            lines.append("%s:" % key)
            if not value:
                lines.append("  (zero)")
            for exp, coeff in value:
                lines.append("  q^%-4d %d" % (exp, coeff))
        else:
            lines.append("%-18s %s" % (key + ":", value))
    sys.stdout.write("\n".join(lines) + "\n")


def _build_spec(args, need_level: bool) -> CrystalSpec:
    shapes = parse_shapes(args.shapes)
    lam = lam_prime = None
    b0 = RectShape.parse(args.b0) if getattr(args, "b0", None) else None
    if getattr(args, "Lambda", None):
        if args.level is None:
            raise ValueError("--Lambda requires --level")
        lam = parse_weight_selector(args.Lambda, args.n, "Lambda")
        if lam.level != args.level:
            raise ValueError(
                "Lambda selector %r has level %d, expected %d"
                % (args.Lambda, lam.level, args.level)
            )
    if getattr(args, "LambdaPrime", None):
        lam_prime = parse_weight_selector(args.LambdaPrime, args.n, "LambdaPrime")
        if args.level is not None and lam_prime.level != args.level:
            raise ValueError(
                "LambdaPrime selector %r has level %d, expected %d"
                % (args.LambdaPrime, lam_prime.level, args.level)
            )
    if need_level and lam is None:
        raise ValueError("this command requires --level and --Lambda")
    spec = CrystalSpec(
        args.n, shapes, level=args.level, lam=lam, lam_prime=lam_prime, b0_shape=b0
    )
    spec.validate()
    return spec


def cmd_kostka(args) -> int:
    if args.Lambda:
        spec = _build_spec(args, need_level=True)
        poly = kostka_level(spec, cache_dir=args.cache_dir, jobs=args.jobs)
        payload = {
            "schema": SCHEMA_VERSION,
            "command": "kostka",
            "mode": "level",
            "spec": _spec_json(spec),
            "polynomial": _poly_pairs(poly),
            "path_count": poly(1),
        }
    else:
        if not getattr(args, "lam", None):
            raise ValueError("kostka needs either --lambda or --level with --Lambda")
        spec = _build_spec(args, need_level=False)
        target = parse_partition(args.lam)
        poly = kostka_classical(spec, target, cache_dir=args.cache_dir, jobs=args.jobs)
        payload = {
            "schema": SCHEMA_VERSION,
            "command": "kostka",
            "mode": "classical",
            "spec": _spec_json(spec),
            "lambda": list(target),
            "polynomial": _poly_pairs(poly),
            "path_count": poly(1),
        }
    _emit(payload, args.format)
    return 0


def cmd_verify(args) -> int:
    spec = _build_spec(args, need_level=True)
    report = bosonic_report(spec, cache_dir=args.cache_dir, jobs=args.jobs)
    rhs = kostka_level(spec, cache_dir=args.cache_dir, jobs=args.jobs)
    warnings = commutation_hypothesis_warnings(spec, cache_dir=args.cache_dir)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "verify",
        "spec": _spec_json(spec),
        "lhs_polynomial": _poly_pairs(report.polynomial),
        "rhs_polynomial": _poly_pairs(rhs),
        "equal": report.polynomial == rhs,
        "summand_count": report.summand_count,
        "truncation_bound": report.truncation_bound,
        "warnings": warnings,
    }
    if args.widen_check:
        widened = bosonic_report(spec, widen=2, cache_dir=args.cache_dir, jobs=args.jobs)
        payload["widen_certificate"] = {
            "widened_bound": widened.truncation_bound,
            "stable": widened.polynomial == report.polynomial,
        }
    _emit(payload, args.format)
    if args.widen_check and not payload["widen_certificate"]["stable"]:
        return 1
    return 0 if payload["equal"] else 1


def cmd_verify_zero(args) -> int:
    shapes = parse_shapes(args.shapes)
    report = level_zero_identity(args.n, shapes, cache_dir=args.cache_dir, jobs=args.jobs)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "verify-zero",
        "spec": {"n": args.n, "shapes": [[s.rows, s.cols] for s in shapes]},
        **report,
    }
    if shapes:
        pairing = level_zero_pairing(args.n, shapes, cache_dir=args.cache_dir)
        payload["pairing_size"] = pairing["pairing_size"]
        payload["pairing_summands"] = pairing["summand_count"]
    _emit(payload, args.format)
    return 0 if payload["equal"] else 1


def cmd_straighten(args) -> int:
    assignments = {}
    for token in args.assignments:
        if "=" not in token:
            raise ValueError("straighten arguments look like n=3 l=2 alpha=1,0,-1")
        key, _, value = token.partition("=")
        assignments[key] = value
    missing = {"n", "l", "alpha"} - set(assignments)
    if missing:
        raise ValueError("straighten is missing %s" % ", ".join(sorted(missing)))
    n = int(assignments["n"])
    level = int(assignments["l"])
    alpha = tuple(int(x) for x in assignments["alpha"].split(","))
    if len(alpha) != n:
        raise ValueError("alpha has %d entries, expected n=%d" % (len(alpha), n))
    from .straighten import SchurSymbol, normalize

    outcome = normalize(SchurSymbol(alpha, level))
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "straighten",
        "n": n,
        "level": level,
        "alpha": list(alpha),
        "result": "zero"
        if outcome is None
        else {"sign": outcome[0], "qpow": outcome[1], "beta": list(outcome[2])},
    }
    _emit(payload, args.format)
    return 0


def _require_cache_dir(args) -> str:
    if not args.cache_dir:
        raise ValueError("this command needs --cache-dir or CRYSTAL_CACHE_DIR")
    return args.cache_dir


def cmd_cache(args) -> int:
    cache_dir = _require_cache_dir(args)
    if args.action == "list":
        entries = []
        if os.path.isdir(cache_dir):
            for name in sorted(os.listdir(cache_dir)):
                if not (name.startswith("R_") and name.endswith(".json")):
                    continue
                try:
                    with open(os.path.join(cache_dir, name), encoding="utf-8") as fh:
                        blob = json.load(fh)
                    entries.append(
                        {
                            "file": name,
                            "version": blob.get("version"),
                            "checksum": blob.get("checksum", "")[:16],
                        }
                    )
                except (OSError, ValueError):
                    entries.append({"file": name, "version": None, "checksum": "corrupt"})
        _emit({"schema": SCHEMA_VERSION, "command": "cache", "entries": entries}, args.format)
        return 0
    if args.action == "build":
        if args.n is None:
            raise ValueError("cache build needs --n")
        shapes = parse_shapes(args.shapes)
        if len(shapes) != 2:
            raise ValueError("cache build needs --shapes with exactly two entries")
        energy.get_local_table(args.n, shapes[0], shapes[1], cache_dir)
        _emit(
            {
                "schema": SCHEMA_VERSION,
                "command": "cache",
                "built": energy.cache_file_name(args.n, shapes[0], shapes[1]),
            },
            args.format,
        )
        return 0
    if args.action == "clear":
        removed = []
        if os.path.isdir(cache_dir):
            for name in sorted(os.listdir(cache_dir)):
                if name.startswith("R_") and name.endswith(".json"):
                    os.unlink(os.path.join(cache_dir, name))
                    removed.append(name)
        _emit({"schema": SCHEMA_VERSION, "command": "cache", "removed": removed}, args.format)
        return 0
    raise ValueError("unknown cache action %r" % args.action)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crystalpaths",
        description="Exact generating polynomials of restricted paths and their "
        "alternating Weyl-sum evaluations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_n=True):
        if need_n:
            p.add_argument("--n", type=int, required=True, help="rank (alphabet size)")
        p.add_argument("--shapes", default="", help="comma list of KxL factor shapes, leftmost first")
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument(
            "--cache-dir",
            default=os.environ.get("CRYSTAL_CACHE_DIR") or None,
            help="directory for persisted tables (default: CRYSTAL_CACHE_DIR)",
        )
        p.add_argument("--jobs", type=int, default=1, help="worker process bound")

    k = sub.add_parser("kostka", help="generating polynomial of restricted paths")
    common(k)
    k.add_argument("--lambda", dest="lam", help="classical weight, e.g. 2,1,0")
    k.add_argument("--level", type=int, default=None)
    k.add_argument("--Lambda", help="restriction weight selector, e.g. L0 or 2L0 or L0+L1")
    k.add_argument("--LambdaPrime", help="produced weight selector; defaults to Lambda")
    k.add_argument("--b0", help="override KxL shape of the grading crystal")
    k.set_defaults(func=cmd_kostka)

    v = sub.add_parser("verify", help="alternating sum against the direct path count")
    common(v)
    v.add_argument("--level", type=int, required=True)
    v.add_argument("--Lambda", required=True)
    v.add_argument("--LambdaPrime")
    v.add_argument("--b0")
    v.add_argument(
        "--widen-check",
        action="store_true",
        help="also certify the truncation by widening the lattice box by 2",
    )
    v.set_defaults(func=cmd_verify)

    z = sub.add_parser("verify-zero", help="formal level-zero evaluation and pairing")
    common(z)
    z.set_defaults(func=cmd_verify_zero)

    st = sub.add_parser("straighten", help="normalize a signed Schur symbol")
    st.add_argument("assignments", nargs="+", metavar="key=value",
                    help="n=<rank> l=<level> alpha=a1,a2,...")
    st.add_argument("--format", choices=("json", "table"), default="json")
    st.set_defaults(func=cmd_straighten)

    c = sub.add_parser("cache", help="manage persisted local-isomorphism tables")
    c.add_argument("action", choices=("list", "build", "clear"))
    common(c, need_n=False)
    c.add_argument("--n", type=int, default=None)
    c.set_defaults(func=cmd_cache)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except ValueError as exc:
        sys.stderr.write("validation error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
