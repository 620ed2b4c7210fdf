"""``ffdist`` command line.

Exit status: 0 on success, 1 on a domain error (or a failed verification),
2 on a usage error.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import __version__
from .constructions import (
    antisymmetric_split,
    isotropic_line,
    nested_antisymmetric_pair,
    subfield_product,
)
from .distance import PointSet, ProductSpec, distance_set_bruteforce, distance_set_product
from .energy import energy_report
from .errors import ContextMismatchError, CountOverflowError, FieldError
from .experiments import (
    DEFAULT_MULTIPLIERS,
    DEFAULT_SEED,
    coverage_check,
    energy_ratio_probe,
    ikp_check,
    sweep_product,
    sweep_quotient,
    trial_seed,
    write_sweep_csv,
)
from .fset import (
    CountVector,
    FSet,
    additive_count_convolution,
    multiplicative_count_convolution,
    product_set,
    quotient_set,
    sumset,
)
from .io import format_points, format_set, parse_element, parse_points, parse_set, read_text, write_atomic
from .prime_field import get_ext_field, get_field

INLINE_LIMIT = 64
DOMAIN_ERRORS = (FieldError, ContextMismatchError, CountOverflowError, OSError)


class UsageError(Exception):
    pass


def _field(args):
    if args.p is None:
        raise UsageError("--p is required")
    return get_ext_field(args.p) if getattr(args, "ext", False) else get_field(args.p)


def _inline_set(ctx, text: str) -> FSet:
    tokens = [t for t in text.split(",") if t.strip()]
    if len(tokens) > INLINE_LIMIT:
        raise UsageError(f"inline sets are limited to {INLINE_LIMIT} elements; use a set file")
    elems = [parse_element(t, ctx) for t in tokens]
    if len(set(elems)) != len(elems):
        raise FieldError("duplicate elements in inline set")
    return FSet.from_elements(ctx, elems)


def _get_set(args, name: str, required: bool = True) -> FSet | None:
    inline = getattr(args, name, None)
    path = getattr(args, f"{name}_file", None)
    if inline is not None and path is not None:
        raise UsageError(f"give --{name} or --{name}-file, not both")
    if path is not None:
        S = parse_set(read_text(path))
        if args.p is not None and S.ctx.p != args.p:
            raise FieldError(f"set file is over p={S.ctx.p} but --p {args.p} was given")
        return S
    if inline is not None:
        return _inline_set(_field(args), inline)
    if required:
        raise UsageError(f"--{name} or --{name}-file is required")
    return None


def _add_set_option(parser, name: str, help_text: str):
    parser.add_argument(f"--{name}", metavar="ELEMS", help=f"{help_text} (comma-separated)")
    parser.add_argument(f"--{name}-file", dest=f"{name}_file", metavar="PATH", help=f"{help_text} (set file)")


def _add_field_options(parser, ext: bool = True):
    parser.add_argument("--p", type=int, help="prime modulus")
    if ext:
        parser.add_argument("--ext", action="store_true", help="work in F_{p^2}")


def _add_distance_source(parser):
    _add_field_options(parser)
    parser.add_argument("--product", action="store_true", help="E = A^d via the sumset fast path")
    _add_set_option(parser, "A", "base set A")
    parser.add_argument("--d", type=int, help="dimension of A^d")
    parser.add_argument("--points", metavar="PATH", help="point file")
    parser.add_argument("--allow-large", action="store_true", help="lift the brute-force pair cap")


def _distance_set(args) -> FSet:
    if args.points:
        E = parse_points(read_text(args.points))
        return distance_set_bruteforce(E, allow_large=args.allow_large)
    A = _get_set(args, "A")
    if args.d is None:
        raise UsageError("--d is required with --A")
    if args.product:
        return distance_set_product(ProductSpec(A, args.d))
    return distance_set_bruteforce(PointSet.cartesian_power(A, args.d), allow_large=args.allow_large)


def _parse_fractions(text: str) -> list[Fraction]:
    try:
        return [Fraction(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse {text!r} as a list of numbers")


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse {text!r} as a list of integers")


def cmd_dist(args):
    return format_set(_distance_set(args))


def _set_or_distance(args) -> FSet:
    S = _get_set(args, "S", required=False)
    return S if S is not None else _distance_set(args)


def cmd_qset(args):
    return format_set(quotient_set(_set_or_distance(args)))


def cmd_pset(args):
    S = _set_or_distance(args)
    return format_set(product_set(S, S))


def cmd_energy(args):
    if args.probe:
        if args.p is None or args.sizes is None:
            raise UsageError("--probe needs --p and --sizes")
        sizes = _parse_ints(args.sizes)
        report = energy_ratio_probe(args.p, sizes, args.trials, args.seed)
        return json.dumps(report, indent=2) + "\n"
    A = _get_set(args, "A")
    B = _get_set(args, "B", required=False)
    B = A if B is None else B
    C = _get_set(args, "C", required=False)
    C = A if C is None else C
    D = _get_set(args, "D", required=False)
    D = B if D is None else D
    return json.dumps(energy_report(A, B, C, D).to_dict(), indent=2) + "\n"


def cmd_construct(args):
    if args.variant == "subfield":
        if args.p is None or args.d is None:
            raise UsageError("subfield needs --p and --d")
        return format_points(subfield_product(args.p, args.d))
    if args.variant == "isotropic":
        if args.p is None:
            raise UsageError("isotropic needs --p")
        return format_points(isotropic_line(args.p))
    if args.variant == "split":
        return format_set(antisymmetric_split(_get_set(args, "S")))
    pair = nested_antisymmetric_pair(_get_set(args, "small"), _get_set(args, "big"))
    return f"# B\n{format_set(pair.B)}# C\n{format_set(pair.C)}"


def _verify_lemma_sumset(args):
    p = args.p or 5
    F = get_field(p)
    if args.exhaustive:
        subsets = [FSet.from_elements(F, c) for r in range(1, p + 1) for c in combinations(range(p), r)]
    else:
        rng = np.random.default_rng(trial_seed(args.seed, p, 0))
        subsets = []
        for _ in range(args.samples):
            size = int(rng.integers(1, min(args.max_size, p) + 1))
            subsets.append(FSet.from_elements(F, rng.choice(p, size=size, replace=False)))
    ok = 0
    for A in subsets:
        good = True
        for k1 in (1, 2):
            for k2 in (1, 2):
                brute = distance_set_bruteforce(PointSet.cartesian_power(A, k1 + k2))
                split = sumset(distance_set_bruteforce(PointSet.cartesian_power(A, k1)),
                               distance_set_bruteforce(PointSet.cartesian_power(A, k2)))
                fast = distance_set_product(ProductSpec(A, k1 + k2))
                good &= brute == split == fast
        ok += good
    return f"{ok}/{len(subsets)} subsets OK\n", ok == len(subsets)


def _verify_convolution(args):
    p = args.p or 97
    F = get_field(p)
    rng = np.random.default_rng(trial_seed(args.seed, p, 1))
    ok = 0
    for _ in range(args.samples):
        f = CountVector(F, rng.integers(0, 50, p))
        g = CountVector(F, rng.integers(0, 50, p))
        same = (additive_count_convolution(f, g, "fast") == additive_count_convolution(f, g, "naive")
                and multiplicative_count_convolution(f, g, "fast") == multiplicative_count_convolution(f, g, "naive"))
        ok += same
    return f"{ok}/{args.samples} convolution inputs OK\n", ok == args.samples


def _verify_energy(args):
    p = args.p or 7
    F = get_field(p)
    rng = np.random.default_rng(trial_seed(args.seed, p, 2))
    ok = 0
    for _ in range(args.samples):
        sets = [rng.choice(p, size=int(rng.integers(1, min(5, p) + 1)), replace=False) for _ in range(4)]
        hist = {}
        for a in sets[0]:
            for b in sets[1]:
                for c in sets[2]:
                    for d in sets[3]:
                        t = (a - b) * (c - d) % p
                        hist[t] = hist.get(t, 0) + 1
        rep = energy_report(*(FSet.from_elements(F, s) for s in sets))
        ok += rep.N == sum(v * v for v in hist.values())
    return f"{ok}/{args.samples} energy quadruples OK\n", ok == args.samples


def cmd_verify(args):
    runner = {
        "lemma-sumset": _verify_lemma_sumset,
        "convolution": _verify_convolution,
        "energy": _verify_energy,
    }[args.target]
    text, ok = runner(args)
    return text, 0 if ok else 1


def cmd_sweep(args):
    if args.p is None or args.d is None:
        raise UsageError("sweep needs --p and --d")
    common = dict(
        trials=args.trials,
        master_seed=args.seed,
        sizes=_parse_ints(args.sizes) if args.sizes else None,
        threads=args.threads,
        audit=not args.no_audit,
    )
    multipliers = _parse_fractions(args.multipliers)
    if args.kind == "quotient":
        rows = sweep_quotient(args.p, args.d, multipliers, **common)
    else:
        rows = sweep_product(args.p, args.d, multipliers, c=Fraction(args.c), **common)
    buf = io.StringIO()
    write_sweep_csv(rows, buf, timing=args.timing)
    return buf.getvalue()


def cmd_ikp(args):
    if args.p is None or args.d is None or args.size is None:
        raise UsageError("ikp needs --p, --d and --size")
    report = ikp_check(args.p, args.d, args.size, args.trials, args.seed)
    return json.dumps(report.to_dict(), indent=2) + "\n", 0 if report.ok else 1


def cmd_coverage(args):
    if args.points:
        E = parse_points(read_text(args.points))
    else:
        A = _get_set(args, "A")
        if args.d is None:
            raise UsageError("--d is required with --A")
        E = PointSet.cartesian_power(A, args.d)
    return "true\n" if coverage_check(E) else "false\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffdist", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ffdist {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write output here (atomically) instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    sp = sub.add_parser("dist", help="distance set of a point set or of A^d")
    _add_distance_source(sp)
    sp.set_defaults(func=cmd_dist)

    for name, fn, what in [("qset", cmd_qset, "quotient set"), ("pset", cmd_pset, "product set")]:
        sp = sub.add_parser(name, help=f"{what} of a set, or of a distance set")
        _add_distance_source(sp)
        _add_set_option(sp, "S", "input set (skips the distance step)")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("energy", help="multiplicative energy report (JSON)")
    _add_field_options(sp, ext=False)
    for name in "ABCD":
        _add_set_option(sp, name, f"set {name}")
    sp.add_argument("--probe", action="store_true", help="random-set ratio probe instead of a single report")
    sp.add_argument("--sizes", help="four set sizes for --probe")
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.set_defaults(func=cmd_energy)

    sp = sub.add_parser("construct", help="explicit constructions")
    sp.add_argument("variant", choices=["subfield", "isotropic", "split", "nested-split"])
    _add_field_options(sp)
    sp.add_argument("--d", type=int)
    _add_set_option(sp, "S", "set to split")
    _add_set_option(sp, "small", "smaller set of a nested split")
    _add_set_option(sp, "big", "larger set of a nested split")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="oracle checks")
    sp.add_argument("target", choices=["lemma-sumset", "convolution", "energy"])
    sp.add_argument("--p", type=int)
    sp.add_argument("--exhaustive", action="store_true", help="all nonempty subsets of F_p")
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--max-size", type=int, default=6)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="seeded threshold sweep (CSV)")
    sp.add_argument("--kind", choices=["quotient", "product"], default="quotient")
    sp.add_argument("--p", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--multipliers", default=",".join(map(str, DEFAULT_MULTIPLIERS)))
    sp.add_argument("--sizes", help="explicit |A| values (overrides --multipliers)")
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--c", default="1/3", help="product target is c*p")
    sp.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sp.add_argument("--timing", action="store_true", help="record wall time per row (breaks byte-reproducibility)")
    sp.add_argument("--no-audit", action="store_true", help="skip the brute-force audit rows")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("ikp", help="exact quotient-coverage check over F_{p^2} (JSON)")
    sp.add_argument("--p", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--size", type=int)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.set_defaults(func=cmd_ikp)

    sp = sub.add_parser("coverage", help="does the distance set cover the whole field")
    _add_field_options(sp)
    _add_set_option(sp, "A", "base set A")
    sp.add_argument("--d", type=int)
    sp.add_argument("--points", metavar="PATH")
    sp.set_defaults(func=cmd_coverage)
    return parser


def provenance(args) -> str:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in {"func", "out"}}
    params.setdefault("seed", None)
    echo = " ".join(f"{k}={'none' if v is None else v}" for k, v in params.items())
    return f"# ffdist {__version__} {echo}\n"


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ffdist: error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"ffdist: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    body, status = result if isinstance(result, tuple) else (result, 0)
    text = provenance(args) + body
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
