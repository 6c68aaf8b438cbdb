"""Command-line front-end.

Every run writes its primary output (``--out`` or stdout) and a manifest
echoing the configuration.  Exit codes: 0 success, 2 validation failure,
1 usage or budget error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from math import factorial
from pathlib import Path

from . import __version__, kernels
from .complex import SimplicialComplex, boundary_complex, parse_builtin, standard_simplex
from .gf2 import betti
from .hypersurface import (
    BernoulliMeasure,
    euler_identity_residual,
    expect_exact,
    expect_monte_carlo,
    parse_quantity,
    percolation_probability,
)
from .packing import (
    BoundReport,
    e_upper_bound,
    lambda_lower_bound,
    mnp_rhs,
    pack_disjoint_sd,
    pack_disjoint_sd_tile,
    pack_overlap,
    q_term,
    validate_packing,
)
from .subdivision import (
    DEFAULT_TOP_CELL_BUDGET,
    BudgetExceeded,
    asymptotic_face_vector,
    subdivide,
    subdivide_iter,
)
from .tiling import (
    eigen_h,
    f_matrix,
    h_matrix,
    induce_sd_tiling,
    induce_skeleton_tiling,
    single_tile,
    tile_boundary_sphere,
    validate_tiling,
)

SCHEMA = "barytile.expectation/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--out", type=Path, help="primary output file (default: stdout)")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--manifest", type=Path, help="manifest path (default: beside --out)")
    sp.add_argument("--budget", type=int, help="top-cell or enumeration budget override")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="barytile", description="Barycentric subdivisions, tilings and random hypersurfaces.")
    ap.add_argument("--version", action="version", version=f"barytile {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("subdivide", help="iterated barycentric subdivision")
    sp.add_argument("--complex", help="simplex:n, boundary-simplex:n, from-file:path")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--d", type=int, default=1)
    _add_common(sp)

    sp = sub.add_parser("betti", help="GF(2) Betti numbers of Sd^d(K)")
    sp.add_argument("--complex")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--d", type=int, default=0)
    _add_common(sp)

    sp = sub.add_parser("expect", help="expected topology of the random hypersurface")
    sp.add_argument("--quantity", required=True, help="bV, btV, bK0, fK0, chiV, or b0V-style")
    sp.add_argument("--complex")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--d", type=int, default=0)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--p", type=int)
    sp.add_argument("--nu", type=_rational, default=Fraction(1, 2))
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=1)
    _add_common(sp)

    sp = sub.add_parser("tile", help="construct and validate tilings")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--s", type=int, default=0, help="tile type (number of removed facets)")
    sp.add_argument("--d", type=int, default=1, help="subdivision depth")
    sp.add_argument("--sphere", action="store_true", help="tile the boundary of Delta_{n+1} instead")
    sp.add_argument("--skeleton", type=int, help="restrict to the given skeleton")
    sp.add_argument("--validate", action="store_true")
    _add_common(sp)

    sp = sub.add_parser("h-matrix", help="the matrix H_n (or F_n)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--which", choices=("h", "f"), default="h")
    _add_common(sp)

    sp = sub.add_parser("pack", help="simplex packings of Sd(T^n_s)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, default=0, help="intersections have dimension < p (0: disjoint)")
    sp.add_argument("--s", type=int, default=0)
    sp.add_argument("--validate", action="store_true")
    _add_common(sp)

    sp = sub.add_parser("bounds", help="consolidated bound report")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--nu", type=_rational, default=Fraction(1, 2))
    sp.add_argument("--d", type=int, default=3, help="largest depth for the lambda lower bound")
    sp.add_argument("--samples", type=int, default=0, help="Monte-Carlo samples for E b_p at --mc-d (0: skip)")
    sp.add_argument("--mc-d", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=1)
    _add_common(sp)

    sp = sub.add_parser("percolate", help="boundary-to-cell percolation probability")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--m-prime", type=int, default=1)
    sp.add_argument("--d", type=int, default=1, help="further subdivision depth m")
    sp.add_argument("--cell", type=int, default=0, help="index of sigma among top cells")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--nu", type=_rational, default=Fraction(1, 2))
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=1)
    _add_common(sp)

    sp = sub.add_parser("euler-check", help="exact Euler-characteristic identity residual")
    sp.add_argument("--complex")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--nu", type=_rational, action="append", help="repeatable; default 0, 1/3, 1/2, 1")
    _add_common(sp)
    return ap


# ---------------------------------------------------------------------------
# commands: each returns (payload, csv rows, ok)


def _complex(args) -> SimplicialComplex:
    return parse_builtin(args.complex) if args.complex else standard_simplex(args.n)


def _top_budget(args) -> int:
    return args.budget if args.budget is not None else DEFAULT_TOP_CELL_BUDGET


def cmd_subdivide(args):
    K = _complex(args)
    S = subdivide_iter(K, args.d, budget=_top_budget(args))
    f = S.complex.f_vector().faces
    payload = {"d": args.d, "f_vector": list(f), "complex": S.complex.to_json_obj()}
    if args.d >= 1:
        payload["registry"] = S.registry_records()
    return payload, [("dimension", "count")] + list(enumerate(f)), True


def cmd_betti(args):
    K = _complex(args)
    S = subdivide_iter(K, args.d, budget=_top_budget(args))
    b = betti(S.complex)
    return {"d": args.d, "betti": b}, [("p", "betti")] + list(enumerate(b)), True


def _record(quantity, n, k, p, d, nu, est) -> dict:
    return {
        "schema": SCHEMA,
        "quantity": quantity,
        "n": n,
        "k": k,
        "p": p,
        "d": d,
        "nu": _frac(nu),
        "mode": est.mode,
        "mean": _frac(est.mean),
        "mean_float": float(est.mean),
        "std_error": est.std_error,
        "samples": est.samples,
        "seed": est.seed,
    }


def _record_rows(rec: dict):
    keys = [k for k in rec if k != "schema"]
    return [tuple(keys), tuple("" if rec[k] is None else rec[k] for k in keys)]


def cmd_expect(args):
    quantity, p = parse_quantity(args.quantity, args.p)
    base = _complex(args)
    S = subdivide_iter(base, args.d, budget=_top_budget(args))
    boundary = None
    if quantity == "btV":
        if args.complex and not args.complex.startswith("simplex:"):
            raise UsageError("btV needs a simplex carrier (simplex:n)")
        boundary = S.image(boundary_complex(base.dimension))
    measure = BernoulliMeasure(args.nu)
    if args.exact:
        kw = {} if args.budget is None else {"budget": args.budget}
        est = expect_exact(S.complex, args.k, p, measure, quantity, boundary=boundary, **kw)
    else:
        if args.samples < 1:
            raise UsageError("--samples must be >= 1")
        est = expect_monte_carlo(
            S.complex, args.k, p, measure, quantity, args.samples, args.seed,
            boundary=boundary, threads=args.threads,
        )
    rec = _record(quantity, base.dimension, args.k, p, args.d, args.nu, est)
    return rec, _record_rows(rec), True


def cmd_tile(args):
    if args.sphere:
        T = tile_boundary_sphere(args.n)
    else:
        T = single_tile(args.n, args.s)
    S = None
    budget = _top_budget(args)
    for _ in range(args.d):
        if len(T.ambient.simplices(T.dimension)) * (T.dimension + 1) > budget:
            raise BudgetExceeded("tiling subdivision exceeds the top-cell budget")
        S = subdivide(T.ambient, S)
        T = induce_sd_tiling(T, S)
    if args.skeleton is not None:
        T = induce_skeleton_tiling(T, args.skeleton)
    payload = {"h_vector": list(T.h_vector()), "tiles": len(T.tiles), "tiling": T.to_json_obj()}
    ok = True
    if args.validate:
        rep = validate_tiling(T)
        payload["validation"] = rep.summary()
        ok = rep.ok
    rows = [("i", "h_i")] + list(enumerate(T.h_vector()))
    return payload, rows, ok


def cmd_h_matrix(args):
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    M = h_matrix(args.n) if args.which == "h" else f_matrix(args.n)
    return {"n": args.n, "which": args.which, "matrix": [list(r) for r in M]}, [tuple(r) for r in M], True


def cmd_pack(args):
    if args.p == 0:
        P = pack_disjoint_sd(args.n) if args.s == 0 else pack_disjoint_sd_tile(args.n, args.s)
    else:
        P = pack_overlap(args.n, args.s, args.p)
    counts = P.descending_counts()
    payload = {"n": args.n, "s": args.s, "p": args.p, "counts": list(counts), "packing": P.to_json_obj()}
    ok = True
    if args.validate:
        rep = validate_packing(P)
        payload["validation"] = "ok" if rep.ok else f"{len(rep.pairs)} pairs, {len(rep.boundary_hits)} boundary hits"
        ok = rep.ok
    top = len(counts) - 1
    rows = [("dimension", "count")] + [(top - i, c) for i, c in enumerate(counts)]
    return payload, rows, ok


def cmd_bounds(args):
    n, p, nu = args.n, args.p, args.nu
    if n < 2 or not 1 <= p <= n - 1:
        raise UsageError("bounds need n >= 2 and 1 <= p <= n-1")
    budget = _top_budget(args)
    lams: list[BoundReport] = []
    for d in range(1, args.d + 1):
        lams.append(lambda_lower_bound(n, p, nu, d, budget=budget))
    rhs = mnp_rhs(n, p, nu)
    e = e_upper_bound(n, p, nu, lams)
    payload = {
        "n": n,
        "p": p,
        "nu": _frac(nu),
        "eigen_h": [_frac(x) for x in eigen_h(n)],
        "asymptotic_q": [_frac(x) for x in asymptotic_face_vector(n)],
        "q_term": _frac(q_term(n, p, nu)),
        "lambda_lower": [r.to_json_obj() for r in lams],
        "mnp_rhs": rhs.to_json_obj(),
        "e_upper": e.to_json_obj(),
    }
    rows = [("kind", "d", "value", "value_float")]
    rows += [("lambda_lower", r.extra["d"], _frac(r.value), float(r.value)) for r in lams]
    rows += [("mnp_rhs", "", _frac(rhs.value), float(rhs.value))]
    rows += [("q_term", "", _frac(q_term(n, p, nu)), float(q_term(n, p, nu)))]
    rows += [("e_upper", "", _frac(e.value), float(e.value))]
    if args.samples > 0:
        S = subdivide_iter(standard_simplex(n), args.mc_d, budget=budget)
        est = expect_monte_carlo(
            S.complex, 1, p, BernoulliMeasure(nu), "bV", args.samples, args.seed, threads=args.threads
        )
        scale = Fraction(1, factorial(n + 1) ** args.mc_d)
        payload["monte_carlo"] = {
            "d": args.mc_d,
            "normalized_mean": float(est.mean * scale),
            "normalized_std_error": est.std_error * float(scale),
            "samples": est.samples,
            "seed": est.seed,
        }
        rows.append(("mc_normalized_mean", args.mc_d, "", float(est.mean * scale)))
    return payload, rows, True


def cmd_percolate(args):
    est = percolation_probability(
        args.n, args.m_prime, args.d, args.cell, args.k, BernoulliMeasure(args.nu),
        args.samples, args.seed, threads=args.threads, budget=_top_budget(args),
    )
    rec = _record("percolation", args.n, args.k, None, args.m_prime + args.d, args.nu, est)
    rec["m_prime"] = args.m_prime
    rec["m"] = args.d
    rec["cell"] = args.cell
    return rec, _record_rows(rec), True


def cmd_euler_check(args):
    K = _complex(args)
    nus = args.nu or [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)]
    kw = {} if args.budget is None else {"budget": args.budget}
    res = [(nu, euler_identity_residual(K, BernoulliMeasure(nu), **kw)) for nu in nus]
    payload = {"residuals": [{"nu": _frac(nu), "residual": _frac(r)} for nu, r in res]}
    rows = [("nu", "residual")] + [(_frac(nu), _frac(r)) for nu, r in res]
    return payload, rows, all(r == 0 for _, r in res)


COMMANDS = {
    "subdivide": cmd_subdivide,
    "betti": cmd_betti,
    "expect": cmd_expect,
    "tile": cmd_tile,
    "h-matrix": cmd_h_matrix,
    "pack": cmd_pack,
    "bounds": cmd_bounds,
    "percolate": cmd_percolate,
    "euler-check": cmd_euler_check,
}


# ---------------------------------------------------------------------------
# output


def _render(payload, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _config(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if isinstance(v, Fraction):
            v = _frac(v)
        elif isinstance(v, Path):
            v = str(v)
        elif isinstance(v, list):
            v = [_frac(x) if isinstance(x, Fraction) else x for x in v]
        out[k] = v
    return out


def _manifest_path(args) -> Path:
    if args.manifest is not None:
        return args.manifest
    if args.out is not None:
        return args.out.with_name(args.out.name + ".manifest.json")
    return Path(f"{args.command}.manifest.json")


def _write_manifest(args, status: str, exit_code: int) -> None:
    man = {
        "command": args.command,
        "config": _config(args),
        "version": __version__,
        "backend": kernels.BACKEND,
        "status": status,
        "exit_code": exit_code,
    }
    _manifest_path(args).write_text(json.dumps(man, indent=2, sort_keys=True) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 1
    try:
        payload, rows, ok = COMMANDS[args.command](args)
    except (UsageError, BudgetExceeded, ValueError, OSError) as e:
        # ValueError covers malformed JSON and out-of-range parameters
        print(f"error: {e}", file=sys.stderr)
        _write_manifest(args, f"error: {e}", 1)
        return 1
    except ArithmeticError as e:
        print(f"validation failed: {e}", file=sys.stderr)
        _write_manifest(args, f"validation failed: {e}", 2)
        return 2
    text = _render(payload, rows, args.format)
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    code = 0 if ok else 2
    _write_manifest(args, "ok" if ok else "validation failed", code)
    if not ok:
        print("validation failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
