"""Command-line front-end: density, moments, hyp1f1, simulate, asymptotics, verify.

Every invocation writes exactly one JSON envelope (or one CSV block) to
stdout; diagnostics go to stderr.  Exit codes: 0 success, 2 usage or
parameter error, 3 internal-consistency failure.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .fields import DEFAULT_PRECISION_BITS, parse_real, format_scalar, to_float, is_exact_scalar
from .ensemble import (
    EnsembleParams,
    InternalConsistencyError,
    UnsupportedParameterError,
    compute_g,
)
from .density import (
    DomainError,
    DivergentMomentError,
    build_density,
    build_fixed_trace,
    delay_time_density,
    moment_fixed_trace,
    moment_unrestricted,
)
from .hypergeom import hyp1f1_matrix
from .montecarlo import SampleConfig, SamplingError, draw_sample, ks_statistic
from .asymptotics import (
    ld_left_rate,
    ld_params,
    ld_right_rate,
    load_tw_table,
    soft_edge_transform,
)

_PRECISION_ENV = "BETAWISHART_PRECISION_BITS"
_LARGE_DEGREE = 2000
_LARGE_CASE_BITS = 512


class UsageError(ValueError):
    pass


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be a:b:steps, got {text!r}")
    try:
        a, b, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"malformed grid {text!r}: {exc}") from None
    if steps < 1:
        raise UsageError("grid needs at least one step")
    return np.linspace(a, b, steps)


def _default_bits(args):
    if getattr(args, "precision", None) is not None:
        return args.precision
    env = os.environ.get(_PRECISION_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{_PRECISION_ENV} must be an integer, got {env!r}") from None
    return None


def _build_params(args):
    """EnsembleParams from the CLI strings, with the large-degree precision default."""
    bits = _default_bits(args)
    beta = parse_real(args.beta, bits if bits is not None else DEFAULT_PRECISION_BITS)
    degree = args.alpha * (args.n - 1)
    if bits is None and degree > _LARGE_DEGREE:
        # exact arithmetic is impractical at this degree; contain cancellation
        bits = _LARGE_CASE_BITS
    if bits is None and not is_exact_scalar(beta):
        bits = DEFAULT_PRECISION_BITS
    return EnsembleParams(args.n, args.alpha, beta, precision=bits)


def _precision_mode(params):
    return "exact" if params.exact else f"float({params.bits})"


def _params_echo(args, extra=None):
    echo = {"n": args.n, "alpha": args.alpha, "beta": args.beta}
    if extra:
        echo.update(extra)
    return echo


def _emit_envelope(command, params_echo, precision_mode, payload, out):
    env = {
        "command": command,
        "params": params_echo,
        "precision_mode": precision_mode,
        "payload": payload,
        "version": __version__,
    }
    out.write(json.dumps(env, sort_keys=True, separators=(",", ":")) + "\n")


def _value_entry(v):
    """float value plus the exact fraction string when one exists."""
    if isinstance(v, (int, Fraction)):
        return {"value": to_float(v), "exact": format_scalar(v)}
    return {"value": to_float(v)}


# ---------------------------------------------------------------------------
# subcommands


def cmd_density(args, out):
    params = _build_params(args)
    d = build_fixed_trace(params) if args.fixed_trace else build_density(params)
    if args.format == "coeffs":
        for j, v in sorted(d.kappa_map().items()):
            out.write(f"{j},{format_scalar(v)}\n")
        return 0
    grid = _parse_grid(args.grid) if args.grid else None
    if args.format == "csv":
        if grid is None:
            raise UsageError("csv format needs --grid a:b:steps")
        vals = d.pdf(grid)
        for x, f in zip(grid, vals):
            out.write(f"{float(x)!r},{float(f)!r}\n")
        return 0
    payload = d.to_json_dict()
    if grid is not None:
        payload["grid"] = {
            "x": [float(x) for x in grid],
            "f": [float(v) for v in np.atleast_1d(d.pdf(grid))],
        }
    _emit_envelope(
        "density",
        _params_echo(args, {"fixed_trace": args.fixed_trace}),
        _precision_mode(params),
        payload,
        out,
    )
    return 0


def cmd_moments(args, out):
    params = _build_params(args)
    d = build_fixed_trace(params) if args.fixed_trace else build_density(params)
    compute = moment_fixed_trace if args.fixed_trace else moment_unrestricted
    results = []
    for text in args.eta:
        eta = parse_real(text, params.bits)
        if isinstance(eta, Fraction) and eta.denominator == 1:
            eta = int(eta)
        entry = {"eta": text}
        entry.update(_value_entry(compute(d, eta)))
        results.append(entry)
    _emit_envelope(
        "moments",
        _params_echo(args, {"fixed_trace": args.fixed_trace, "eta": list(args.eta)}),
        _precision_mode(params),
        {"moments": results},
        out,
    )
    return 0


def cmd_hyp1f1(args, out):
    params = _build_params(args)
    h = hyp1f1_matrix(params)
    results = []
    for text in args.x:
        x = parse_real(text, params.bits)
        if not params.exact and isinstance(x, Fraction):
            x = to_float(x)
        entry = {"x": text}
        entry.update(_value_entry(h(x)))
        results.append(entry)
    _emit_envelope(
        "hyp1f1",
        _params_echo(args, {"x": list(args.x)}),
        _precision_mode(params),
        {"values": results},
        out,
    )
    return 0


def cmd_simulate(args, out):
    if args.fixed_trace and args.delay_time is not None:
        raise UsageError("--fixed-trace and --delay-time are mutually exclusive")
    params = _build_params(args)
    mode = "unrestricted"
    tau_h = 1.0
    if args.fixed_trace:
        mode = "fixed_trace"
    elif args.delay_time is not None:
        mode = "delay_time"
        tau_h = args.delay_time
        b2n = to_float(params.beta_scalar()) * params.n / 2
        if abs(b2n - params.alpha) > 1e-12:
            raise UsageError(
                f"delay-time mode needs alpha = beta*n/2 = {b2n}, got alpha = {params.alpha}"
            )
    cfg = SampleConfig(
        params=params,
        count=args.count,
        seed=args.seed,
        mode=mode,
        tau_h=tau_h,
        workers=args.workers,
    )
    sample = draw_sample(cfg)
    ks = None
    if args.ks:
        if mode == "fixed_trace":
            cdf = build_fixed_trace(params).cdf
        elif mode == "delay_time":
            cdf = delay_time_density(params.n, params.beta, tau_h, precision=params.precision).cdf
        else:
            cdf = build_density(params).cdf
        ks = ks_statistic(sample, cdf)
    if args.format == "csv":
        if ks is not None:
            sys.stderr.write(f"ks,{ks!r}\n")
        out.write(sample.histogram_csv(args.hist) if args.hist else sample.to_csv())
        return 0
    payload = json.loads(sample.to_json())
    if args.hist:
        del payload["values"]
        payload["histogram"] = [
            [float(a), float(b)]
            for a, b in (row.split(",") for row in sample.histogram_csv(args.hist).splitlines())
        ]
    if ks is not None:
        payload["ks"] = ks
    _emit_envelope(
        "simulate",
        _params_echo(args, {"count": args.count, "seed": args.seed, "mode": mode}),
        _precision_mode(params),
        payload,
        out,
    )
    return 0


def cmd_asymptotics(args, out):
    if args.large_dev is None and args.tw_transform is None:
        raise UsageError("need --large-dev and/or --tw-transform")
    if args.format == "csv" and args.large_dev is not None and args.tw_transform is not None:
        raise UsageError("csv format takes only one of --large-dev / --tw-transform per run")
    params = _build_params(args)
    payload = {}
    rows_csv = []
    if args.large_dev is not None:
        p = ld_params(params)
        rows = []
        for z in _parse_grid(args.large_dev):
            z = float(z)
            left = ld_left_rate(p, z) if 0 <= z < p.zeta_minus else None
            right = ld_right_rate(p, z) if z >= 0 else None
            rows.append({"z": z, "phi_minus": left, "phi_plus": right})
            rows_csv.append(
                f"{z!r},{'' if left is None else repr(left)},{'' if right is None else repr(right)}"
            )
        payload["large_dev"] = {"zeta_minus": p.zeta_minus, "zeta_plus": p.zeta_plus, "rows": rows}
    if args.tw_transform is not None:
        table = None
        if args.tw_table is not None:
            if not os.path.exists(args.tw_table):
                raise UsageError(f"tw-table file not found: {args.tw_table}")
            table = load_tw_table(args.tw_table)
        d = build_fixed_trace(params) if args.fixed_trace else build_density(params)
        rows = []
        rows_csv = []
        for s, val in soft_edge_transform(d, _parse_grid(args.tw_transform)):
            row = {"s": float(s), "exact_scaled": float(val)}
            line = f"{float(s)!r},{float(val)!r}"
            if table is not None:
                ref = table(float(s))
                row["tw_reference"] = ref
                line += f",{ref!r}"
            rows.append(row)
            rows_csv.append(line)
        payload["tw_transform"] = {"rows": rows}
    if args.format == "csv":
        out.write("\n".join(rows_csv) + "\n")
        return 0
    _emit_envelope("asymptotics", _params_echo(args), _precision_mode(params), payload, out)
    return 0


# ---------------------------------------------------------------------------
# verify suites


def _check(checks, name, ok, detail=""):
    checks.append({"name": name, "status": "pass" if ok else "fail", "detail": detail})
    sys.stderr.write(f"{'PASS' if ok else 'FAIL'} {name}{': ' + detail if detail else ''}\n")


def _verify_tables(checks):
    from . import reference_cases as rc
    from .fields import precision_bits

    for (n, a, b), (poly, div) in rc.UNRESTRICTED_EXACT.items():
        d = build_density(EnsembleParams(n, a, b))
        kap = d.kappa_map()
        ok = all(kap.get(a + k, Fraction(0)) == Fraction(c, div) for k, c in enumerate(poly))
        _check(checks, f"density-exact n={n} alpha={a} beta={b}", ok)
    d = build_density(EnsembleParams(3, 2, parse_real("e", 256), precision=256))
    want = rc.unrestricted_e_case(256)
    with precision_bits(256):
        ok = all(abs(g - w) <= 1e-10 * abs(w) for g, w in zip(d.kappa, want))
    _check(checks, "density-float n=3 alpha=2 beta=e", ok)
    for (n, a, b), (scale, poly) in rc.FIXED_TRACE_EXACT.items():
        ft = build_fixed_trace(EnsembleParams(n, a, b))
        _, coeffs = ft.polynomial_factor()
        want = [Fraction(0)] * len(coeffs)
        for k, c in enumerate(poly):
            want[a + k] = Fraction(scale) * c
        _check(checks, f"fixed-trace-exact n={n} alpha={a} beta={b}", coeffs == want)
    ft = build_fixed_trace(EnsembleParams(3, 2, parse_real("pi", 256), precision=256))
    tail, coeffs = ft.polynomial_factor()
    wtail, wcoeffs = rc.fixed_trace_pi_case(256)
    with precision_bits(256):
        ok = abs(tail - wtail) <= 1e-10 * abs(wtail)
        ok = ok and all(
            abs(coeffs[2 + k] - w) <= 1e-10 * abs(w) for k, w in enumerate(wcoeffs)
        )
    _check(checks, "fixed-trace-float n=3 alpha=2 beta=pi", ok)
    for n, a, btext, x, want in rc.HYP1F1_VALUES:
        beta = parse_real(btext, 256)
        bits = None if is_exact_scalar(beta) else 256
        h = hyp1f1_matrix(EnsembleParams(n, a, beta, precision=bits))
        got = to_float(h(x if bits is None else float(x)))
        ok = abs(got - want) <= 1e-4 * abs(want)
        _check(checks, f"hyp1f1 n={n} alpha={a} beta={btext} x={x}", ok, f"got {got:.6g}")


def _verify_appendix(checks):
    from . import reference_cases as rc
    from .crosscheck import kappa_via_partitions, mixed_moment

    n, a, b = rc.PARTITION_EXAMPLE["params"]
    params = EnsembleParams(n, a, Fraction(b))
    got = kappa_via_partitions(params, rc.PARTITION_EXAMPLE["r"])
    want = rc.PARTITION_EXAMPLE["kappa_r"]
    _check(
        checks,
        f"partition kappa_{rc.PARTITION_EXAMPLE['r']}",
        got == want,
        f"got {format_scalar(got)}, want {format_scalar(want)}",
    )
    for expo, want in rc.PARTITION_EXAMPLE["mixed_moments"]:
        got = mixed_moment(params, expo)
        ok = abs(got - want) <= 1e-8 * abs(want)
        _check(checks, f"mixed moment {expo}", ok, f"got {got:.10g}")


def _verify_small(checks):
    from .crosscheck import quadrature_g

    for n in (2, 3):
        for alpha in (1, 2, 3):
            for beta in (2, 4):
                params = EnsembleParams(n, alpha, Fraction(beta))
                g = compute_g(params)
                ok = True
                worst = 0.0
                for x in (0, 0.5, 1, 5):
                    exact = to_float(g(Fraction(x) if x != 0.5 else Fraction(1, 2)))
                    quad = quadrature_g(params, x)
                    rel = abs(exact - quad) / abs(exact)
                    worst = max(worst, rel)
                    ok = ok and rel <= 1e-8
                _check(
                    checks,
                    f"recursion-vs-quadrature n={n} alpha={alpha} beta={beta}",
                    ok,
                    f"max rel err {worst:.2e}",
                )


def cmd_verify(args, out):
    suites = [args.suite] if args.suite else ["small", "appendixB", "tables"]
    checks = []
    for suite in suites:
        {"small": _verify_small, "appendixB": _verify_appendix, "tables": _verify_tables}[suite](
            checks
        )
    failed = [c for c in checks if c["status"] == "fail"]
    _emit_envelope(
        "verify",
        {"suite": args.suite or "all"},
        "exact",
        {"checks": checks, "passed": len(checks) - len(failed), "failed": len(failed)},
        out,
    )
    return 3 if failed else 0


# ---------------------------------------------------------------------------
# argument parsing


def _add_params(sub):
    sub.add_argument("n", type=int)
    sub.add_argument("alpha", type=int)
    sub.add_argument("beta", help="rational p/q, decimal, or pi/e tokens (e.g. 5pi)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="betawishart",
        description="Exact smallest-eigenvalue densities for beta-Wishart-Laguerre ensembles.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--precision",
        type=int,
        default=None,
        help=f"float precision bits (forces float mode; env {_PRECISION_ENV})",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("density", help="closed-form smallest-eigenvalue density")
    _add_params(p)
    p.add_argument("--fixed-trace", action="store_true")
    p.add_argument("--grid", default=None, metavar="a:b:steps")
    p.add_argument("--format", choices=("json", "csv", "coeffs"), default="json")
    p.set_defaults(func=cmd_density)

    p = subs.add_parser("moments", help="moments of the smallest eigenvalue")
    _add_params(p)
    p.add_argument("eta", nargs="+", help="moment orders")
    p.add_argument("--fixed-trace", action="store_true")
    p.set_defaults(func=cmd_moments)

    p = subs.add_parser("hyp1f1", help="matrix-argument confluent hypergeometric values")
    _add_params(p)
    p.add_argument("x", nargs="+", help="evaluation points")
    p.set_defaults(func=cmd_hyp1f1)

    p = subs.add_parser("simulate", help="bidiagonal-model Monte-Carlo sampling")
    _add_params(p)
    p.add_argument("count", type=int)
    p.add_argument("seed", type=int)
    p.add_argument("--fixed-trace", action="store_true")
    p.add_argument("--delay-time", type=float, default=None, metavar="TAUH")
    p.add_argument("--ks", action="store_true", help="report the KS distance to the exact CDF")
    p.add_argument("--hist", type=int, default=None, metavar="BINS")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_simulate)

    p = subs.add_parser("asymptotics", help="soft-edge transform and large-deviation rates")
    _add_params(p)
    p.add_argument("--tw-transform", default=None, metavar="a:b:steps")
    p.add_argument("--large-dev", default=None, metavar="a:b:steps")
    p.add_argument("--tw-table", default=None, metavar="FILE")
    p.add_argument("--fixed-trace", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_asymptotics)

    p = subs.add_parser("verify", help="built-in verification suites")
    p.add_argument("--suite", choices=("small", "appendixB", "tables"), default=None)
    p.set_defaults(func=cmd_verify)

    return parser


_GRID_FLAGS = ("--grid", "--tw-transform", "--large-dev")


def _join_grid_values(argv):
    """Merge `--flag -6:4:200` into `--flag=-6:4:200` so argparse accepts negative grids."""
    out = []
    skip = False
    for i, arg in enumerate(argv):
        if skip:
            skip = False
            continue
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if arg in _GRID_FLAGS and nxt is not None and nxt.startswith("-") and ":" in nxt:
            out.append(f"{arg}={nxt}")
            skip = True
        else:
            out.append(arg)
    return out


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(_join_grid_values(sys.argv[1:] if argv is None else list(argv)))
    try:
        return args.func(args, sys.stdout)
    except InternalConsistencyError as exc:
        sys.stderr.write(f"internal consistency failure: {exc}\n")
        return 3
    except (
        UsageError,
        UnsupportedParameterError,
        DomainError,
        DivergentMomentError,
        SamplingError,
        ValueError,
        ZeroDivisionError,
        OSError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
