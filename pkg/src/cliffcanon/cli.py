"""Command-line interface: ``cliffcanon {classify,build,scramble,canonicalize,verify}``.

Exit codes: 0 success, 2 reducible input, 3 relation or numerical failure,
4 malformed input file.  ``CLIFFCANON_ATOL`` sets an absolute tolerance
unless ``--atol`` is given.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import repfile
from .algebra import Signature, classify, irreducible_dim, radon_hurwitz
from .canonicalize import canonicalize
from .construct import build_canonical
from .errors import CliffordError, ReducibleError
from .harness import scramble, verify
from .linalg import Tolerance, residual_max

EXIT_OK, EXIT_REDUCIBLE, EXIT_NUMERIC, EXIT_MALFORMED = 0, 2, 3, 4


def _tolerance(dim: int, atol: float | None = None) -> Tolerance:
    if atol is None and os.environ.get("CLIFFCANON_ATOL"):
        atol = float(os.environ["CLIFFCANON_ATOL"])
    return Tolerance(atol=atol) if atol is not None else Tolerance.for_dim(dim)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_classify(args) -> int:
    sig = Signature(args.r, args.s)
    t = classify(sig)
    dim = irreducible_dim(sig)
    print(f"signature: {sig}")
    print(f"algebra: {t}")
    print(f"field: {t.field}")
    print(f"block_size: {t.block_size}")
    print(f"direct_sum: {str(t.is_direct_sum).lower()}")
    print(f"irreducible_dim: {dim}")
    if sig.s == 0:
        rh = radon_hurwitz(dim)
        ok = "consistent" if args.r <= rh else "INCONSISTENT"
        print(f"radon_hurwitz: rho({dim}) = {rh} >= r = {args.r} ({ok})")
    else:
        print(f"radon_hurwitz: rho({dim}) = {radon_hurwitz(dim)} (applies to s = 0 only)")
    return EXIT_OK


def cmd_build(args) -> int:
    pkg = build_canonical((args.r, args.s), args.class_sign)
    meta = {"provenance": f"build {args.r} {args.s} --class-sign {args.class_sign:+d}"}
    _write_text(args.out, repfile.dumps(repfile.RepFile.from_package(pkg, meta)))
    return EXIT_OK


def cmd_scramble(args) -> int:
    rf = repfile.loads(_read_text(args.input))
    rep = scramble(rf.to_representation(), args.seed, args.invertible, args.cond)
    meta = dict(rf.metadata)
    meta["seed"] = str(args.seed)
    meta["scramble"] = f"invertible cond={args.cond!r}" if args.invertible else "orthogonal"
    out = repfile.RepFile.from_representation(rep, rf.class_sign, meta)
    _write_text(args.out, repfile.dumps(out))
    return EXIT_OK


def cmd_canonicalize(args) -> int:
    rf = repfile.loads(_read_text(args.input))
    rep = rf.to_representation()
    res = canonicalize(rep, _tolerance(rep.dim))
    meta = dict(rf.metadata)
    meta["canonical"] = "T"
    out = repfile.RepFile.from_representation(res.rep, res.class_sign, meta)
    _write_text(args.out, repfile.dumps(out))
    if args.p_out:
        _write_text(args.p_out, repfile.dumps_matrices(
            {"class_sign": res.class_sign, "p": res.change.p, "p_inv": res.change.p_inv}))
    return EXIT_OK


def _against(rep_a, rep_b, tol: Tolerance) -> dict:
    if rep_a.signature != rep_b.signature or rep_a.dim != rep_b.dim:
        return {"equivalent": False, "reason": "signature or dimension differs"}
    ra = canonicalize(rep_a, tol)
    rb = canonicalize(rep_b, tol)
    if ra.class_sign != rb.class_sign:
        return {"equivalent": False, "reason": "class signs differ",
                "class_signs": [ra.class_sign, rb.class_sign]}
    # ra.p_inv A ra.p == rb.p_inv B rb.p, hence B == q^{-1} A q with q = ra.p rb.p_inv
    q = ra.change.p @ rb.change.p_inv
    q_inv = rb.change.p @ ra.change.p_inv
    residual = max((residual_max(q_inv @ a @ q, b)
                    for a, b in zip(rep_a.generators, rep_b.generators)), default=0.0)
    return {"equivalent": residual <= tol.atol, "residual": residual,
            "conjugator": np.asarray(q).tolist()}


def cmd_verify(args) -> int:
    rf = repfile.loads(_read_text(args.input))
    rep = rf.to_representation()
    tol = _tolerance(rep.dim, args.atol)
    report = verify(rep, tol).to_dict()
    ok = report["pass"]
    if args.against:
        other = repfile.loads(_read_text(args.against)).to_representation()
        report["against"] = _against(rep, other, tol)
        ok = ok and report["against"]["equivalent"]
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK if ok else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cliffcanon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="matrix algebra isomorphic to Cl(r, s)")
    p.add_argument("r", type=int)
    p.add_argument("s", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("build", help="canonical irreducible representation")
    p.add_argument("r", type=int)
    p.add_argument("s", type=int)
    p.add_argument("--class-sign", type=int, choices=(1, -1), default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("scramble", help="conjugate by a seeded random matrix")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--invertible", action="store_true")
    p.add_argument("--cond", type=float, default=100.0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_scramble)

    p = sub.add_parser("canonicalize", help="transform to canonical-T form")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--out", default="-")
    p.add_argument("--p-out")
    p.set_defaults(func=cmd_canonicalize)

    p = sub.add_parser("verify", help="relation residuals as JSON")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--against")
    p.add_argument("--atol", type=float)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", None) is not None and not 0 <= args.seed < 2 ** 64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_MALFORMED
    try:
        return args.func(args)
    except repfile.RepFileError as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except ReducibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REDUCIBLE
    except (CliffordError, np.linalg.LinAlgError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
