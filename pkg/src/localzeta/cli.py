"""Command-line front door.

Exit codes: 0 all checks passed, 1 at least one mismatch, 2 invalid input.
Instance reports are emitted one JSON object per line so sweeps stream.
The env var LOCALZETA_WORKERS > 1 runs sweep instances in a process pool;
report ordering stays by instance index either way.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import arch, cgamma, cosets, globalconst, zeta
from .bessel import BesselDatum, SatakeParams, bessel_coeffs
from .errors import LocalZetaError
from .gl2 import (RAMIFIED_OTHER, RAMIFIED_PS_UNRAM_ALPHA,
                  STEINBERG_UNRAMIFIED, induced_invariant_dim,
                  newform_space_dim)
from .series import DEFAULT_ORDER, Poly, RatFn

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")


class _InputError(Exception):
    pass


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _open_out(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_verify_nonarch(args, out) -> int:
    data = _load_json(args.params)
    instances = data if isinstance(data, list) else [data]
    status = EXIT_OK
    for idx, obj in enumerate(instances):
        try:
            if args.order is not None:
                obj = dict(obj, order=args.order)
            inst = zeta.LocalInstance.from_json(obj)
            report = zeta.verify_local(inst)
        except (LocalZetaError, KeyError, TypeError, ValueError) as exc:
            raise _InputError(f"instance {idx}: {exc}")
        _emit(dict(report.to_json(), index=idx), out)
        if not report.passed:
            status = EXIT_MISMATCH
    return status


def _cmd_bessel(args, out) -> int:
    data = _load_json(args.params)
    try:
        q = data["q"]
        order = args.order if args.order is not None else data.get("order", DEFAULT_ORDER)
        satake = SatakeParams.from_json(data["satake"], q)
        datum = BesselDatum.from_json(data["bessel"], q)
    except (LocalZetaError, KeyError, TypeError, ValueError) as exc:
        raise _InputError(str(exc))
    series = bessel_coeffs(satake, datum, order)
    _emit({"q": q, "order": order,
           "coefficients": series.to_json()}, out)
    return EXIT_OK


def _cmd_dims(args, out) -> int:
    mismatches = 0
    checked = 0
    for n in range(args.max_n + 1):
        for r in range(n, args.max_r + 1):
            checked += 1
            expected = sum(newform_space_dim(n, r - m) for m in range(r + 1))
            if induced_invariant_dim(n, r) != expected:
                mismatches += 1
    _emit({"max_n": args.max_n, "max_r": args.max_r, "checked": checked,
           "mismatches": mismatches, "all_match": mismatches == 0}, out)
    return EXIT_OK if mismatches == 0 else EXIT_MISMATCH


def _cmd_cosets(args, out) -> int:
    try:
        report = cosets.double_coset_partition(args.p, method=args.method)
    except LocalZetaError as exc:
        raise _InputError(str(exc))
    _emit(report.to_json(), out)
    ok = report.class_count == 2 and report.t1_distinct
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_arch_verify(args, out) -> int:
    data = _load_json(args.spec)
    specs = data if isinstance(data, list) else [data]
    status = EXIT_OK
    for idx, obj in enumerate(specs):
        try:
            spec = arch.ArchSpec.from_json(obj)
        except (LocalZetaError, KeyError, TypeError, ValueError) as exc:
            raise _InputError(f"spec {idx}: {exc}")
        try:
            closed = arch.arch_zeta_closed(spec)
            quad = arch.arch_zeta_quadrature(spec)
        except LocalZetaError as exc:
            _emit({"index": idx, "spec": spec.to_json(),
                   "error": str(exc), "passed": False}, out)
            status = EXIT_MISMATCH
            continue
        rel = abs(quad - closed) / abs(closed)
        passed = rel <= args.tol
        _emit({"index": idx, "spec": spec.to_json(),
               "closed": [closed.real, closed.imag],
               "quadrature": [quad.real, quad.imag],
               "rel_error": rel, "tol": args.tol, "passed": passed}, out)
        if not passed:
            status = EXIT_MISMATCH
    return status


def _cmd_gamma_selftest(args, out) -> int:
    report = cgamma.gamma_selftest()
    worst = max(report["recurrence_max_rel_err"],
                report["gamma_half_rel_err"],
                report["factorial_max_rel_err"])
    report["passed"] = worst <= 1e-10
    _emit(report, out)
    return EXIT_OK if report["passed"] else EXIT_MISMATCH


def _cmd_global_constant(args, out) -> int:
    data = _load_json(args.spec)
    try:
        spec = globalconst.GlobalSpec.from_json(data)
    except (LocalZetaError, KeyError, TypeError, ValueError) as exc:
        raise _InputError(str(exc))
    result = globalconst.special_value_constant(spec)
    _emit(result.to_json(), out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _sweep_plan(seed: int, order: int, repeat: int) -> list[dict]:
    import random
    rng = random.Random(seed)
    plan = []
    legendres = (-1, 0, 1)
    for i in range(20 * repeat):
        inst = zeta.random_local_instance(
            rng, RAMIFIED_OTHER, legendres[i % 3], order=order)
        plan.append(inst.to_json())
    for legendre, flag in ((-1, False), (0, False), (0, True), (1, False)):
        for _ in range(10 * repeat):
            inst = zeta.random_local_instance(
                rng, RAMIFIED_PS_UNRAM_ALPHA, legendre,
                beta_chi_unramified=flag, order=order)
            plan.append(inst.to_json())
    for i in range(10 * repeat):
        inst = zeta.random_local_instance(
            rng, STEINBERG_UNRAMIFIED, legendres[i % 3], order=order)
        plan.append(inst.to_json())
    return plan


def _corrupted_y_factor(inst):
    """Negative-control hook: a wrong Y (extra unit of T in the numerator)."""
    good = zeta.y_factor(inst)
    bump = Poly([1, 1], inst.q)
    return RatFn(good.numer * bump, good.denom)


def _run_sweep_instance(payload) -> dict:
    obj, corrupt = payload
    inst = zeta.LocalInstance.from_json(obj)
    fn = _corrupted_y_factor if corrupt else None
    report = zeta.verify_local(inst, y_factor_fn=fn)
    result = {"case": report.case, "passed": report.passed}
    if not report.passed:
        # echo verbatim so the instance can be re-run via verify-nonarch
        result["instance"] = report.instance
        if report.lhs_vs_hq is not None:
            result["lhs_vs_hq"] = report.lhs_vs_hq.to_json()
        if report.lhs_vs_rhs is not None:
            result["lhs_vs_rhs"] = report.lhs_vs_rhs.to_json()
    return result


def _cmd_sweep(args, out) -> int:
    plan = _sweep_plan(args.seed, args.order, args.repeat)
    payloads = [(obj, args.corrupt_y) for obj in plan]
    workers = int(os.environ.get("LOCALZETA_WORKERS", "1"))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_sweep_instance, payloads))
    else:
        results = [_run_sweep_instance(p) for p in payloads]
    failures = 0
    for idx, result in enumerate(results):
        _emit(dict(result, index=idx, seed=args.seed), out)
        if not result["passed"]:
            failures += 1
    _emit({"summary": True, "seed": args.seed, "instances": len(results),
           "failures": failures}, out)
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localzeta",
        description="verify local zeta-integral identities and constants")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-nonarch", help="verify a local instance file")
    p.add_argument("--params", required=True)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify_nonarch)

    p = sub.add_parser("bessel", help="print the B(h(l,0)) coefficient table")
    p.add_argument("--params", required=True)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bessel)

    p = sub.add_parser("dims", help="check the invariant-dimension identities")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-r", type=int, default=12)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_dims)

    p = sub.add_parser("cosets", help="double-coset partition of GL4(F_p)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--method", choices=("full", "quotient"), default="full")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_cosets)

    p = sub.add_parser("arch-verify", help="archimedean quadrature vs closed form")
    p.add_argument("--spec", required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_arch_verify)

    p = sub.add_parser("gamma-selftest", help="complex Gamma accuracy checks")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gamma_selftest)

    p = sub.add_parser("global-constant", help="special-value constant C")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_global_constant)

    p = sub.add_parser("sweep", help="randomized identity sweep over Cases 1-3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--repeat", type=int, default=1,
                   help="multiplier on the per-case instance counts")
    p.add_argument("--corrupt-y", action="store_true",
                   help="negative control: tamper with the Y factor")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    out, close = _open_out(getattr(args, "out", None))
    try:
        return args.func(args, out)
    except _InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if close:
            out.close()


if __name__ == "__main__":
    raise SystemExit(main())
