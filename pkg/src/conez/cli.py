"""Command-line front end.

Standard output carries JSON only; diagnostics go to standard error.
Exit codes: 0 member / pass, 1 non-member / fail, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .dual_cone import dual_oracle_lorentz, dual_oracle_orthant, dyad_from_pair, sample_dual_lorentz
from .errors import ConeZError
from .harness import run_suite
from .linalg_core import DEFAULT_TOL, Tolerances
from .lorentz_cone import complementarity_check, sample_complementary_pair
from .matrix_io import MatrixFileError, read_matrix, read_vector, write_matrix, write_vector
from .z_operators import sample_z_lorentz, z_oracle_lorentz, z_oracle_orthant

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj))


def _tolerances(args) -> Tolerances:
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
            tol = Tolerances(**{k: float(v) for k, v in cfg.items()})
        except (OSError, ValueError, TypeError) as exc:
            raise UsageError(f"bad config {args.config}: {exc}") from exc
    else:
        tol = DEFAULT_TOL
    if args.tol is not None:
        try:
            tol = Tolerances.uniform(args.tol)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return tol


def _default_seed() -> int:
    raw = os.environ.get("CONEZ_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"CONEZ_SEED must be an integer, got {raw!r}") from None


def cmd_check_z(args) -> int:
    tol = _tolerances(args)
    A = read_matrix(args.input)
    if args.cone == "orthant":
        member = z_oracle_orthant(A, tol)
        _emit({"member": member, "gamma_star": None, "gamma_param": None, "lambda_min": None})
    else:
        cert = z_oracle_lorentz(A, tol)
        member = cert.member
        _emit(
            {
                "member": member,
                "gamma_star": cert.gamma_star,
                "gamma_param": cert.gamma_param,
                "lambda_min": cert.lambda_min_at_star,
            }
        )
    return EXIT_OK if member else EXIT_NO


def cmd_check_dual(args) -> int:
    tol = _tolerances(args)
    B = read_matrix(args.input)
    if args.cone == "orthant":
        member = dual_oracle_orthant(B, tol)
        _emit({"member": member, "trace": float(np.trace(B)), "sym_defect": None, "lambda_max_jb": None})
    else:
        cert = dual_oracle_lorentz(B, tol)
        member = cert.member
        _emit(
            {
                "member": member,
                "trace": cert.trace_residual,
                "sym_defect": cert.sym_defect,
                "lambda_max_jb": cert.lambda_max_JB,
            }
        )
    return EXIT_OK if member else EXIT_NO


def cmd_decompose(args) -> int:
    tol = _tolerances(args)
    A = read_matrix(args.input)
    cert = z_oracle_lorentz(A, tol)
    if not cert.member:
        print("NotMember: matrix is not in Z(L)", file=sys.stderr)
        _emit({"member": False, "error": "NotMember"})
        return EXIT_NO
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    triple = cert.decomposition
    (out / "gamma.txt").write_text(format(triple.gamma_param, ".17g") + "\n")
    write_matrix(out / "P.csv", triple.P)
    write_matrix(out / "Q.csv", triple.Q)
    _emit({"member": True, "gamma_param": triple.gamma_param, "files": ["gamma.txt", "P.csv", "Q.csv"]})
    return EXIT_OK


def cmd_gen(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    rng = np.random.default_rng(seed)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    ext = args.format
    if args.kind == "z":
        files = {f"sample.{ext}": sample_z_lorentz(args.n, rng)}
    elif args.kind == "dual-psd":
        files = {f"sample.{ext}": sample_dual_lorentz(args.n, rng, "psd_balanced")}
    elif args.kind == "dual-dyad":
        files = {f"sample.{ext}": sample_dual_lorentz(args.n, rng, "dyad_sum")}
    else:
        pair = sample_complementary_pair(args.n, rng)
        files = {f"x.{ext}": pair.x, f"y.{ext}": pair.y}
    for name, value in files.items():
        (write_vector if value.ndim == 1 else write_matrix)(out / name, value)
    provenance = {"kind": args.kind, "n": args.n, "seed": seed}
    (out / "provenance.json").write_text(json.dumps(provenance) + "\n")
    _emit({**provenance, "files": sorted(files) + ["provenance.json"]})
    return EXIT_OK


def cmd_pair(args) -> int:
    """Exit 0 when the complementarity and dyad verdicts agree."""
    tol = _tolerances(args)
    x = read_vector(args.x)
    y = read_vector(args.y)
    if x.shape != y.shape:
        raise UsageError(f"x has {x.size} entries, y has {y.size}")
    check = complementarity_check(x, y, tol)
    cert = dual_oracle_lorentz(dyad_from_pair(x, y), tol)
    _emit(
        {
            "complementary": check.in_c,
            "reason": check.reason,
            "dyad_member": cert.member,
            "trace": cert.trace_residual,
            "sym_defect": cert.sym_defect,
            "lambda_max_jb": cert.lambda_max_JB,
        }
    )
    return EXIT_OK if check.in_c == cert.member else EXIT_NO


def cmd_verify(args) -> int:
    tol = _tolerances(args)
    seed = _default_seed() if args.seed is None else args.seed
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    reports = run_suite(args.suite, args.n, args.trials, seed, tol)
    for r in reports:
        print(r.to_json())
    return EXIT_OK if all(r.status == "Pass" for r in reports) else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="relative tolerance for all roles")
    common.add_argument("--config", default=None, help="JSON file with eps_psd/eps_sym/eps_zero")

    parser = argparse.ArgumentParser(prog="conez", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-z", parents=[common], help="membership in Z(K)")
    p.add_argument("--cone", choices=["lorentz", "orthant"], default="lorentz")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_check_z)

    p = sub.add_parser("check-dual", parents=[common], help="membership in Z(K)*")
    p.add_argument("--cone", choices=["lorentz", "orthant"], default="lorentz")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_check_dual)

    p = sub.add_parser("decompose", parents=[common], help="write gamma, P, Q with A = gamma I - J(P+Q)")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("gen", help="write a random sample and its provenance")
    p.add_argument("--kind", choices=["z", "dual-psd", "dual-dyad", "pair"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("pair", parents=[common], help="complementarity versus the dyad -y x^T")
    p.add_argument("-x", required=True)
    p.add_argument("-y", required=True)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=["duality", "definitional", "orlitzky", "n2", "orthant", "all"], default="all")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, MatrixFileError, ConeZError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
