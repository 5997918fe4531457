"""Command-line interface: ``symgb gb | symm-gb | symod-gb | gen | check``."""

from __future__ import annotations

import argparse
import json
import sys
import time

from .coeff import NoRootError
from .corpus import IdealSpec, gen_cyclic, gen_swiss_francs, parse_ideal, print_ideal
from .groebner import GroebnerBasis, buchberger, is_groebner_basis, normal_form
from .modular import LiftConfig, LiftError, RangeExhaustedError, sy_mod_std_run
from .permutation import Permutation, check_symmetry, parse_cycles
from .polynomial import ParseError
from .symm import NotSymmetricError, symm_std
from .transform import NotApplicableError, UnsupportedExtensionError

COMPUTE_ERRORS = (
    ParseError,
    NotApplicableError,
    UnsupportedExtensionError,
    NoRootError,
    NotSymmetricError,
    LiftError,
    RangeExhaustedError,
    ZeroDivisionError,
    OverflowError,
    ValueError,
)


class UsageError(Exception):
    pass


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load(args) -> IdealSpec:
    spec = parse_ideal(_read(args.file))
    ring = spec.ring
    if getattr(args, "char", None) is not None:
        try:
            ring = ring.with_domain(args.char)
        except ValueError as e:
            raise UsageError(str(e)) from None
    if getattr(args, "order", None):
        try:
            ring = ring.with_order(args.order)
        except ValueError as e:
            raise UsageError(str(e)) from None
    if ring != spec.ring:
        spec = spec.with_ring(ring)
    if getattr(args, "perm", None):
        try:
            sigma = parse_cycles(args.perm, ring.n)
        except ValueError as e:
            raise UsageError(f"--perm: {e}") from None
        spec = IdealSpec(spec.ring, spec.generators, sigma)
    return spec


def _sigma(spec: IdealSpec) -> Permutation:
    if spec.symmetry is None:
        raise UsageError("no permutation: pass --perm or add a 'perm:' header")
    return spec.symmetry


def _emit(args, G: GroebnerBasis, extra: dict, timings: dict[str, float]) -> None:
    sys.stdout.write("".join(f"{g}\n" for g in G))
    if args.time and timings:
        for k, v in timings.items():
            print(f"time {k}: {v:.3f} s", file=sys.stderr)
    if args.output:
        ring = G.ring
        doc = {
            "ring": "Q" if ring.domain.is_rational() else f"Fp {ring.domain.p}",
            "vars": list(ring.names),
            "ordering": str(ring.order),
            "basis": [str(g) for g in G],
            "fingerprint": [list(m) for m in G.lm_fingerprint],
            **extra,
        }
        if args.time:
            doc["timings"] = timings
        with open(args.output, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")


def cmd_gb(args) -> int:
    spec = _load(args)
    t0 = time.perf_counter()
    G = buchberger(spec.generators, ring=spec.ring)
    _emit(args, G, {"command": "gb"}, {"std": time.perf_counter() - t0})
    return 0


def cmd_symm_gb(args) -> int:
    spec = _load(args)
    sigma = _sigma(spec)
    rep = symm_std(spec.generators, sigma, ring=spec.ring, verify_symmetry=args.verify_symmetry)
    timings = dict(rep.timings)
    timings["symm_std"] = sum(v for k, v in rep.timings.items() if k != "verify_symmetry")
    if args.time:
        t0 = time.perf_counter()
        G0 = buchberger(spec.generators, ring=spec.ring)
        timings["std"] = time.perf_counter() - t0
        if G0 != rep.basis:
            print("error: symmetric and direct bases differ", file=sys.stderr)
            return 1
        if timings["std"] > 0:
            print(f"ratio symmStd/std: {timings['symm_std'] / timings['std']:.2f}", file=sys.stderr)
    extra = {
        "command": "symm-gb",
        "perm": str(sigma),
        "k": rep.k,
        "xi": str(rep.xi_used),
        "eigen_exponents": list(rep.eigen_exponents.exponents),
    }
    _emit(args, rep.basis, extra, timings)
    return 0


def cmd_symod_gb(args) -> int:
    spec = _load(args)
    if not spec.ring.domain.is_rational():
        raise UsageError("symod-gb works over Q; drop --char or use 'ring: Q'")
    sigma = spec.symmetry or Permutation.identity(spec.ring.n)
    try:
        cfg = LiftConfig(
            initial_prime_count=args.primes,
            verification=args.verify,
            worker_count=args.threads,
            seed=args.seed,
        )
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.verify_symmetry:
        G0 = buchberger(spec.generators, ring=spec.ring)
        if not check_symmetry(spec.generators, sigma, G0):
            raise NotSymmetricError(f"ideal is not symmetric under {sigma}")
    t0 = time.perf_counter()
    run = sy_mod_std_run(spec.generators, sigma, cfg, ring=spec.ring)
    timings = {"sy_mod_std": time.perf_counter() - t0}
    extra = {
        "command": "symod-gb",
        "perm": str(sigma),
        "primes": run.primes,
        "rejected_primes": run.rejected,
        "verification": run.verification,
        "verification_primes": run.verification_primes,
        "rounds": run.rounds,
    }
    _emit(args, run.basis, extra, timings)
    return 0


def cmd_gen(args) -> int:
    try:
        if args.family == "cyclic":
            if args.n is None:
                raise UsageError("gen cyclic needs N")
            spec = gen_cyclic(args.n, args.char or 0, args.order or "dp")
        else:
            spec = gen_swiss_francs(args.char or 0, args.order or "dp", args.labeling)
    except ValueError as e:
        raise UsageError(str(e)) from None
    sys.stdout.write(print_ideal(spec))
    return 0


def cmd_check(args) -> int:
    spec = _load(args)
    claimed = parse_ideal(_read(args.basis))
    ring = spec.ring
    if claimed.ring.names != ring.names:
        raise UsageError("basis file uses different variables")
    G = [g.change_ring(ring) for g in claimed.generators if g]
    problems = []
    if not is_groebner_basis(G):
        problems.append("not a Groebner basis")
    elif any(normal_form(f, G) for f in spec.generators):
        problems.append("does not contain the ideal")
    else:
        direct = buchberger(spec.generators, ring=ring)
        if any(normal_form(g, direct.elements) for g in G):
            problems.append("generates a larger ideal")
    if args.verify_symmetry and spec.symmetry is not None:
        if G and not check_symmetry(spec.generators, spec.symmetry, G):
            problems.append("ideal is not symmetric")
    if problems:
        print("FAIL: " + "; ".join(problems))
        return 1
    print("OK")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="symgb", description="Groebner bases of symmetric ideals.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, perm=True):
        p.add_argument("file", nargs="?", help="ideal file (default: stdin)")
        p.add_argument("--char", type=int, help="coefficient characteristic, 0 for Q")
        p.add_argument("--order", help="ordering: dp, lp, Dp or block:dp8,lp1")
        if perm:
            p.add_argument("--perm", help='permutation in cycle notation, e.g. "(1 2)(3)"')
            p.add_argument("--verify-symmetry", action="store_true", help="check the ideal is symmetric first")
        p.add_argument("--time", action="store_true", help="print timings to stderr")
        p.add_argument("--output", help="write a JSON result file")

    p = sub.add_parser("gb", help="plain Buchberger")
    common(p, perm=False)
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("symm-gb", help="symmetric algorithm over one field")
    common(p)
    p.set_defaults(func=cmd_symm_gb)

    p = sub.add_parser("symod-gb", help="modular symmetric algorithm over Q")
    common(p)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--verify", choices=["ptest", "full"], default="ptest")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--primes", type=int, default=4, help="initial number of primes")
    p.set_defaults(func=cmd_symod_gb)

    p = sub.add_parser("gen", help="write a benchmark ideal")
    p.add_argument("family", choices=["cyclic", "swiss-francs"])
    p.add_argument("n", nargs="?", type=int)
    p.add_argument("--char", type=int)
    p.add_argument("--order")
    p.add_argument("--labeling", choices=["34", "45"], default="34")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="verify a claimed basis")
    p.add_argument("file", help="ideal file")
    p.add_argument("basis", help="file with the claimed basis (same header format)")
    p.add_argument("--char", type=int)
    p.add_argument("--order")
    p.add_argument("--verify-symmetry", action="store_true")
    p.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"symgb: error: {e}", file=sys.stderr)
        return 2
    except COMPUTE_ERRORS as e:
        print(f"symgb: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
