"""Command-line front end.

    loopchains rho      [input.json] --simplex 0,1,2
    loopchains chi      [input.json] --simplex 0,1,2 [--method direct|composed]
    loopchains verify   [input.json] --suite NAME ... [--max-dim k] [--weight w]
    loopchains homology  input.json  --degree n --weight w [--scan | --persist W2] [--reduce cohochschild]

Exit codes: 0 success, 1 an identity failed, 2 input or usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .exactalg import FormalSum, Ring, ZZ, QQ, Zmod, parse_ring
from .simplicial import (Complex, ComplexError, build_complex, chain, collapse_subcomplex,
                         fmt_simplex, load_complex, quotient_chains, simplex_key)
from .necklace import necklace_key
from .constloops import rho_raw, chi_direct_raw, chi_composed_raw
from .verify import SUITES, VerifyConfig, run_suite
from .homology import (ScanRow, format_scan, stable_suffix, truncated_homology, coch_homology,
                       theta_pi, format_coch, simplicial_cycles, persistent_betti)


class InputError(Exception):
    pass


def thread_limit() -> int:
    raw = os.environ.get("LOOPCHAINS_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"LOOPCHAINS_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise InputError(f"LOOPCHAINS_THREADS must be a positive integer, got {raw!r}")
    return n


def parse_simplex(text: str) -> tuple:
    try:
        vs = [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise InputError(f"bad simplex {text!r}: expected comma-separated integers")
    if not vs:
        raise InputError("empty simplex")
    if len(set(vs)) != len(vs):
        raise InputError(f"repeated vertex in {text!r}")
    return tuple(sorted(vs))


def parse_collapse(text: str) -> list:
    return [list(parse_simplex(part)) for part in text.split(";") if part.strip()]


def _load(args, simplex=None) -> tuple[Complex, list | None]:
    if args.input is None:
        if simplex is None and args.simplex:
            simplex = parse_simplex(args.simplex)
        if simplex is None:
            raise InputError("an input file or --simplex is required for this command")
        return build_complex([list(simplex)], name="simplex"), None
    try:
        return load_complex(args.input)
    except FileNotFoundError:
        raise InputError(f"no such file: {args.input}")
    except (json.JSONDecodeError, ComplexError, TypeError, ValueError) as e:
        raise InputError(f"cannot read {args.input}: {e}")


def _collapse(args, X: Complex, from_file) -> tuple | None:
    maximals = parse_collapse(args.collapse) if args.collapse else from_file
    if not maximals:
        return None
    try:
        return tuple(sorted(collapse_subcomplex(X, maximals), key=simplex_key))
    except ComplexError as e:
        raise InputError(str(e))


def _emit_sum(terms: FormalSum, fmt: str, meta: dict) -> str:
    if fmt == "json":
        return json.dumps({**meta, "terms": [{"coefficient": str(c), "necklace": str(n)}
                                              for n, c in terms.items()]}, indent=2)
    return "\n".join(f"{_coef(c)}·{n}" for n, c in terms.items()) or "0"


def _coef(c) -> str:
    from .exactalg import format_coefficient
    return format_coefficient(c)


# ---------------------------------------------------------------------------
# commands


def cmd_constloop(args, ring: Ring) -> int:
    if not args.simplex:
        raise InputError("--simplex is required")
    sigma = parse_simplex(args.simplex)
    X, _ = _load(args, sigma)
    if sigma not in X:
        raise InputError(f"{fmt_simplex(sigma)} is not a simplex of the input complex")
    if args.command == "rho":
        raw = rho_raw(sigma)
    else:
        raw = (chi_composed_raw if args.method == "composed" else chi_direct_raw)(sigma)
    out = FormalSum(raw, ring, key=necklace_key)
    print(_emit_sum(out, args.format, {"command": args.command, "simplex": list(sigma), "ring": ring.name}))
    return 0


def cmd_verify(args, ring: Ring) -> int:
    X, from_file = _load(args)
    names = args.suite or list(SUITES)
    for n in names:
        if n not in SUITES:
            raise InputError(f"unknown suite {n!r}; choose from {', '.join(SUITES)}")
    collapse = _collapse(args, X, from_file)
    if "theta" in names and collapse is None:
        raise InputError("the theta suite needs a collapse set (file 'collapse' block or --collapse)")
    cfg = VerifyConfig(max_dim=args.max_dim, weight=args.weight, collapse=collapse or ())
    results = [run_suite(n, X, cfg) for n in names]
    if args.format == "json":
        print(json.dumps({"complex": X.name, "results": [r.to_json() for r in results]}, indent=2))
    else:
        print("\n".join(r.to_text() for r in results))
    return 0 if all(r.passed for r in results) else 1


def _scan_row(payload) -> ScanRow:
    X, degree, w, ring = payload
    return ScanRow(degree, w, *truncated_homology(X, degree, w, ring))


def cmd_homology(args, ring: Ring) -> int:
    if isinstance(ring, Zmod) and any(ring.m % q == 0 for q in range(2, int(ring.m ** 0.5) + 1)):
        raise InputError("homology over Zmod:m needs a prime m")
    X, from_file = _load(args)
    if args.reduce:
        return _homology_cohochschild(args, X, from_file, ring)
    if args.scan:
        jobs = [(X, args.degree, w, ring) for w in range(0, args.weight + 1)]
        threads = thread_limit()
        if threads > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                rows = list(pool.map(_scan_row, jobs))
        else:
            rows = [_scan_row(j) for j in jobs]
        print(format_scan(rows, args.format))
        return 0
    if args.persist is not None:
        if args.persist < args.weight:
            raise InputError("--persist must be at least --weight")
        try:
            rank = persistent_betti(X, args.degree, args.weight, args.persist, QQ if ring == ZZ else ring)
        except ValueError as e:
            raise InputError(str(e))
        if args.format == "json":
            print(json.dumps({"degree": args.degree, "weight": args.weight, "later_weight": args.persist,
                              "persistent_betti": rank}, indent=2))
        else:
            print(f"rank of H_{args.degree}(F_{args.weight}) -> H_{args.degree}(F_{args.persist}): {rank}")
        return 0
    betti, torsion = truncated_homology(X, args.degree, args.weight, ring)
    row = ScanRow(args.degree, args.weight, betti, torsion)
    if args.format == "json":
        print(json.dumps(row.to_json(), indent=2))
    else:
        print(format_scan([row], "text"))
    return 0


def _homology_cohochschild(args, X: Complex, from_file, ring: Ring) -> int:
    collapse = _collapse(args, X, from_file)
    if collapse is None:
        raise InputError("--reduce cohochschild needs a collapse set (file 'collapse' block or --collapse)")
    try:
        q = quotient_chains(X, collapse, require_reduced=True)
    except ComplexError as e:
        raise InputError(str(e))
    betti, torsion = coch_homology(q, args.degree, ring)
    cycles = []
    for c in simplicial_cycles(X, args.degree):
        image = theta_pi(FormalSum(rho_raw_sum(c), ring, key=necklace_key), q)
        cycles.append((c, image))
    if args.format == "json":
        print(json.dumps({
            "degree": args.degree, "betti": betti, "torsion": torsion,
            "collapse_asserted_contractible": True,
            "cycles": [{"cycle": c.to_text(fmt_simplex), "theta_rho": [
                {"coefficient": str(x), "element": str(e)} for e, x in img.items()]}
                for c, img in cycles],
        }, indent=2))
    else:
        lines = [f"coHochschild homology in degree {args.degree}: betti {betti}"
                 + (f", torsion {','.join(map(str, torsion))}" if torsion else ""),
                 "(collapse set asserted contractible by the input)"]
        for c, img in cycles:
            lines.append(f"cycle {c.to_text(fmt_simplex)}")
            lines.append("  theta_pi(rho(c)) = " + (format_coch(img).replace("\n", " ") or "0"))
        print("\n".join(lines))
    return 0


def rho_raw_sum(c: FormalSum) -> dict:
    out: dict = {}
    for s, x in c.items():
        for n, y in rho_raw(s).items():
            out[n] = out.get(n, 0) + x * y
    return {n: v for n, v in out.items() if v}


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="complex JSON file")
    common.add_argument("--ring", default="Z", help="Z, Q or Zmod:m (default Z)")
    common.add_argument("--weight", type=int, default=4, help="weight bound (default 4)")
    common.add_argument("--max-dim", type=int, default=4, help="largest simplex dimension checked")
    common.add_argument("--simplex", help="comma-separated vertices, e.g. 0,1,2")
    common.add_argument("--suite", action="append", help="verification suite (repeatable)")
    common.add_argument("--reduce", choices=["cohochschild"], help="reduce through a collapse")
    common.add_argument("--collapse", help="collapse maximal simplices 'a,b,c;d,e,f' (overrides the file)")
    common.add_argument("--format", choices=["text", "json"], default="text")

    p = _Parser(prog="loopchains", description="Constant-loop chain maps on necklace complexes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("rho", parents=[common], help="the map rho on a simplex")
    chi = sub.add_parser("chi", parents=[common], help="the map chi on a simplex")
    chi.add_argument("--method", choices=["direct", "composed"], default="direct")
    sub.add_parser("verify", parents=[common], help="run identity suites: " + ", ".join(SUITES))
    hom = sub.add_parser("homology", parents=[common], help="homology of a weight truncation")
    hom.add_argument("--degree", type=int, default=0)
    hom.add_argument("--scan", action="store_true", help="scan weights 0..--weight")
    hom.add_argument("--persist", type=int, metavar="W2",
                     help="rank of the map from the --weight truncation into the W2 truncation")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.weight < 0 or args.max_dim < 0:
            raise InputError("--weight and --max-dim must be non-negative")
        if getattr(args, "degree", 0) < 0:
            raise InputError("--degree must be non-negative")
        try:
            ring = parse_ring(args.ring)
        except ValueError as e:
            raise InputError(str(e))
        thread_limit()
        if args.command in ("rho", "chi"):
            return cmd_constloop(args, ring)
        if args.command == "verify":
            return cmd_verify(args, ring)
        return cmd_homology(args, ring)
    except InputError as e:
        print(f"loopchains: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
