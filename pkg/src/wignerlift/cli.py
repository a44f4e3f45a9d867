"""Command-line surface: verify / lift / factor.

Exit codes: 0 when every requested check passes, 1 on a check failure or a
rejected input instance, 2 on malformed files or flags.  The environment
variable WIGNERLIFT_SEED, when set, overrides --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import WignerliftError
from .harness import (
    ALL_PROPOSITIONS,
    TrialPlan,
    report_to_text,
    run_suite,
)
from .hilbert import ToleranceConfig
from .lift import lift
from .serialize import (
    decode_composition,
    decode_oracle,
    encode_lift,
    encode_matrix,
)
from .tensor import (
    check_span_surjectivity,
    check_totality,
    construct_isomorphism,
    map_basis,
)

__all__ = ["cli_main", "main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wignerlift",
        description="Verify the ray-map lift and tensor-factorization propositions, "
                    "lift serialized oracles, and factor bilinear composition maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run the proposition suite")
    verify.add_argument("--props", default=",".join(ALL_PROPOSITIONS),
                        help="comma-separated proposition ids (default: all)")
    verify.add_argument("--dims", default="2,3,4",
                        help="comma-separated dimensions (default: 2,3,4)")
    verify.add_argument("--trials", type=int, default=50)
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--tol", type=float, default=None,
                        help="equality tolerance (default 1e-9)")
    verify.add_argument("--rank-tol", type=float, default=None,
                        help="rank tolerance (default 1e-8)")
    verify.add_argument("--negative-controls", action="store_true")
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--out", default=None, help="write the report to a file")
    verify.add_argument("--format", choices=("json", "text"), default="json")

    lift_cmd = sub.add_parser("lift", help="lift a serialized ray-map oracle")
    lift_cmd.add_argument("--map", required=True, dest="map_file",
                          help="oracle JSON (tabulated 'pairs' or 'matrix' form)")
    lift_cmd.add_argument("--tol", type=float, default=None)
    lift_cmd.add_argument("--out", default=None)

    factor = sub.add_parser("factor", help="factor a bilinear composition map")
    factor.add_argument("--bilinear", required=True, dest="bilinear_file",
                        help="composition JSON (dim_a/dim_b/dim_c/data)")
    factor.add_argument("--tol", type=float, default=None)
    factor.add_argument("--out", default=None)

    return parser


def _tolerances(args) -> ToleranceConfig:
    kwargs = {}
    if getattr(args, "tol", None) is not None:
        kwargs["eq_tol"] = args.tol
    if getattr(args, "rank_tol", None) is not None:
        kwargs["rank_tol"] = args.rank_tol
    return ToleranceConfig(**kwargs)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _cmd_verify(args) -> int:
    seed = args.seed
    env_seed = os.environ.get("WIGNERLIFT_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            print(f"error: WIGNERLIFT_SEED is not an integer: {env_seed!r}",
                  file=sys.stderr)
            return 2
    try:
        props = tuple(p for p in args.props.split(",") if p)
        dims = tuple(int(d) for d in args.dims.split(",") if d)
        plan = TrialPlan(props=props, dims=dims, trials=args.trials, seed=seed,
                         tolerances=_tolerances(args),
                         negative_controls=args.negative_controls)
        report = run_suite(plan, workers=args.workers)
    except (WignerliftError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    else:
        _emit(report_to_text(report), args.out)
    return 0 if report["passed"] else 1


def _cmd_lift(args) -> int:
    try:
        obj = _load_json(args.map_file)
        oracle = decode_oracle(obj, tol=_tolerances(args))
    except (OSError, ValueError, KeyError, TypeError, WignerliftError) as exc:
        print(f"error: cannot load oracle: {exc}", file=sys.stderr)
        return 2
    try:
        result = lift(oracle, oracle.domain_dim, oracle.codomain_dim,
                      tol=_tolerances(args))
    except WignerliftError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _emit(json.dumps(encode_lift(result), indent=2) + "\n", args.out)
    if args.out:
        print(f"lift written to {args.out} "
              f"({'antilinear' if result.antilinear else 'linear'}, "
              f"residual {result.residual:.3e})")
    return 0


def _cmd_factor(args) -> int:
    tol = _tolerances(args)
    try:
        m = decode_composition(_load_json(args.bilinear_file))
    except (OSError, ValueError, KeyError, TypeError, WignerliftError) as exc:
        print(f"error: cannot load composition: {exc}", file=sys.stderr)
        return 2

    totality = check_totality(m, trials=25, seed=0, tol=tol)
    print(f"H1 totality: {'PASS' if totality.passed else 'FAIL'} "
          f"(min image norm {totality.min_norm:.3g} at {totality.worst_pair})")
    print("H2 bilinearity: bilinear by representation")
    surj = check_span_surjectivity(m, tol=tol)
    print(f"H3 span surjectivity: {'PASS' if surj.passed else 'FAIL'} "
          f"(rank {surj.rank} of {surj.required_rank})")
    basis = map_basis(m, tol=tol)
    print(f"basis orthonormality: {'PASS' if basis.passed else 'FAIL'} "
          f"(max Gram deviation {basis.gram_deviation:.3g})")
    if not (totality.passed and surj.passed and basis.passed):
        print("FAIL: composition is not a rotated tensor product")
        return 1
    try:
        iso = construct_isomorphism(m, tol=tol, trials=50, seed=0)
    except WignerliftError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(f"isomorphism: unitarity residual {iso.unitarity_residual:.3g}, "
          f"factorization residual {iso.factorization_residual:.3g}")
    ok = (iso.unitarity_residual < tol.eq_tol
          and iso.factorization_residual < tol.eq_tol)
    if args.out:
        payload = {
            "iso": encode_matrix(iso.iso),
            "unitarity_residual": iso.unitarity_residual,
            "factorization_residual": iso.factorization_residual,
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on flag errors
        return int(exc.code or 0)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "lift":
        return _cmd_lift(args)
    if args.command == "factor":
        return _cmd_factor(args)
    return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
