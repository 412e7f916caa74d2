"""Command-line interface: ``breakcast {transfer,kernel,simulate,run-panel}``.

Exit status is 0 on success, 2 on invalid flags (one-line diagnostic naming
the flag) and 1 on numerical failure (naming the module that failed).
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys

import numpy as np

from breakcast.errors import BreakcastError, DomainError
from breakcast.experiment import DEFAULT_SEED, FORMATTERS, ScenarioConfig, run_panel
from breakcast.kernel import DEFAULT_ABS_TOL, DEFAULT_DFT_SIZE, impulse_response_fft, impulse_response_quadrature
from breakcast.predictors import DegeneratePolicy, OlsOptions
from breakcast.presets import D_ALL, R_ALL, get_preset
from breakcast.simulate import InnovationKind, draw_innovations_batch, draw_models_batch, simulate_paths
from breakcast.transfer import KernelSpec, Variant, eval_H

SEED_ENV = "BREAKCAST_SEED"
PROG = "breakcast"


class UsageError(Exception):
    """Invalid command-line input; exits with status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D401 - argparse hook
        raise UsageError(message)


def _positive_float(text: str) -> float:
    value = float(text)
    if not (np.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _nonneg_float(text: str) -> float:
    value = float(text)
    if not (np.isfinite(value) and value >= 0):
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _open_unit(text: str) -> float:
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return value


def _half_to_one(text: str) -> float:
    value = float(text)
    if not 0.5 < value < 1:
        raise argparse.ArgumentTypeError(f"must lie in (1/2, 1), got {text}")
    return value


def _int_at_least(low: int):
    def parse(text: str) -> int:
        value = int(text)
        if value < low:
            raise argparse.ArgumentTypeError(f"must be an integer >= {low}, got {text}")
        return value

    return parse


def _d_value(text: str) -> int:
    return _int_at_least(4)(text)


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"must be a 64-bit unsigned integer, got {text}")
    return value


def _interval(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}") from None
    if not -1 <= lo < hi <= 1:
        raise argparse.ArgumentTypeError(f"must satisfy -1 <= LO < HI <= 1, got {text}")
    return lo, hi


def _complex(text: str) -> complex:
    return complex(text.replace(" ", "").replace("i", "j"))


def _add_kernel_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma-k", type=_positive_float, default=1.1, help="kernel gamma (default 1.1)")
    p.add_argument("--a", type=_open_unit, default=0.6, help="smoother a in (0,1) (default 0.6)")
    p.add_argument("--p", type=_half_to_one, default=0.7, help="smoother p in (1/2,1) (default 0.7)")
    p.add_argument("--m", type=_int_at_least(1), default=2, help="smoother power m (default 2)")
    p.add_argument("--cap-n", type=_int_at_least(1), default=100, help="smoother order N (default 100)")


def _add_model_params(p: argparse.ArgumentParser, presets: bool = False) -> None:
    default = None if presets else (0.0, 1.0)
    p.add_argument("--beta1-range", type=_interval, default=default, metavar="LO,HI")
    p.add_argument("--beta2-range", type=_interval, default=default, metavar="LO,HI")
    p.add_argument(
        "--innovation",
        choices=[k.value for k in InnovationKind],
        default=None if presets else InnovationKind.IID_GAUSSIAN.value,
    )
    p.add_argument("--sigma", type=_nonneg_float, default=0.3, help="noise scale (default 0.3)")
    p.add_argument("--theta-min", type=int, choices=(1, 2), default=2)
    p.add_argument(
        "--pu-time-offset",
        type=_int_at_least(0),
        default=None if presets else 0,
        help="time shift of the pseudo-uniform formula",
    )
    p.add_argument("--seed", type=_seed, default=None, help=f"master seed (fallback ${SEED_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Kernel predictors for ultra-short AR(1) series with a break.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("transfer", help="evaluate H(z) at points")
    p.add_argument("--variant", choices=[v.value for v in Variant], default="kh")
    p.add_argument("--r", type=_positive_float, default=0.8)
    _add_kernel_params(p)
    p.add_argument("--z", type=_complex, action="append", help="evaluation point, e.g. 0.3+0.4j (repeatable)")
    p.add_argument("--grid", type=_int_at_least(1), help="evaluate on this many unit-circle points")
    p.add_argument("--output", help="write to this path instead of stdout")

    p = sub.add_parser("kernel", help="impulse-response taps as CSV")
    p.add_argument("--variant", choices=[v.value for v in Variant], default="kh")
    p.add_argument("--r", type=_positive_float, default=0.8)
    _add_kernel_params(p)
    p.add_argument("--first-index", type=int, default=0)
    p.add_argument("--count", type=_int_at_least(1), default=6)
    p.add_argument("--method", choices=["dft", "quadrature"], default="dft")
    p.add_argument("--dft-size", type=_int_at_least(1024), default=DEFAULT_DFT_SIZE)
    p.add_argument("--abs-tol", type=_positive_float, default=DEFAULT_ABS_TOL)
    p.add_argument("--output")

    p = sub.add_parser("simulate", help="simulated paths as CSV")
    p.add_argument("--d", type=_d_value, default=4)
    p.add_argument("--n", type=_int_at_least(1), default=1, help="number of trials")
    _add_model_params(p)
    p.add_argument("--output")

    p = sub.add_parser("run-panel", help="Monte Carlo RMSE table")
    p.add_argument("--table", type=int, choices=range(1, 6))
    p.add_argument("--panel", choices=list("abcd"))
    p.add_argument("--r", type=_positive_float, nargs="+", default=None)
    p.add_argument("--d", type=_d_value, nargs="+", default=None)
    p.add_argument("--n-sim", type=_int_at_least(1), default=None)
    _add_model_params(p, presets=True)
    _add_kernel_params(p)
    p.add_argument("--ols-demean", action="store_true")
    p.add_argument("--ols-intercept", action="store_true")
    p.add_argument(
        "--degenerate-policy", choices=[x.value for x in DegeneratePolicy], default="zero-slope"
    )
    p.add_argument("--format", choices=sorted(FORMATTERS), default="csv")
    p.add_argument("--workers", type=_int_at_least(1), default=1)
    p.add_argument("--output")
    return parser


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return DEFAULT_SEED
    try:
        return _seed(env)
    except (ValueError, argparse.ArgumentTypeError):
        raise UsageError(f"argument --seed: ${SEED_ENV}={env!r} is not a 64-bit unsigned integer") from None


def _spec(args) -> KernelSpec:
    return KernelSpec.build(
        args.variant, r=args.r, gamma_k=args.gamma_k, a=args.a, p=args.p, m=args.m, cap_n=args.cap_n
    )


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _cmd_transfer(args) -> str:
    points = list(args.z or [])
    if args.grid:
        points += list(np.exp(2j * np.pi * np.arange(args.grid) / args.grid))
    if not points:
        raise UsageError("argument --z: give at least one --z or --grid")
    spec = _spec(args)
    rows = []
    for z in points:
        h = complex(eval_H(complex(z), spec))
        rows.append((repr(z.real), repr(z.imag), repr(h.real), repr(h.imag)))
    return _csv(("z_re", "z_im", "re", "im"), rows)


def _cmd_kernel(args) -> str:
    spec = _spec(args)
    if args.method == "dft":
        if args.dft_size & (args.dft_size - 1):
            raise UsageError(f"argument --dft-size: must be a power of two, got {args.dft_size}")
        if args.count > args.dft_size:
            raise UsageError(f"argument --count: must not exceed --dft-size ({args.dft_size})")
        response = impulse_response_fft(spec, args.dft_size, args.first_index, args.count)
    else:
        response = impulse_response_quadrature(spec, args.first_index, args.count, args.abs_tol)
    rows = [
        (int(t), repr(float(h)), response.method.value, repr(response.max_imag_residual))
        for t, h in zip(response.indices, response.taps)
    ]
    return _csv(("t", "h", "method", "residual"), rows)


def _cmd_simulate(args) -> str:
    seed = _resolve_seed(args)
    trials = np.arange(1, args.n + 1)
    beta1, beta2, theta = draw_models_batch(
        args.beta1_range, args.beta2_range, args.d, trials, seed, theta_min=args.theta_min
    )
    eta = draw_innovations_batch(args.innovation, args.d, trials, seed, pu_time_offset=args.pu_time_offset)
    x = simulate_paths(beta1, beta2, theta, args.sigma, eta)
    rows = [
        (int(s), t, repr(float(x[i, t])), repr(float(beta1[i])), repr(float(beta2[i])), int(theta[i]))
        for i, s in enumerate(trials)
        for t in range(args.d + 1)
    ]
    return _csv(("trial", "t", "x", "beta1", "beta2", "theta"), rows)


def _cmd_run_panel(args) -> str:
    preset = None
    if args.table is not None or args.panel is not None:
        if args.table is None or args.panel is None:
            flag = "--panel" if args.panel is None else "--table"
            raise UsageError(f"argument {flag}: --table and --panel go together")
        try:
            preset = get_preset(args.table, args.panel)
        except KeyError as exc:
            raise UsageError(f"argument --panel: {exc.args[0]}") from None

    def pick(value, attr, fallback):
        if value is not None:
            return value
        return getattr(preset, attr) if preset is not None else fallback

    config = ScenarioConfig(
        beta1_range=pick(args.beta1_range, "beta1_range", (0.0, 1.0)),
        beta2_range=pick(args.beta2_range, "beta2_range", (0.0, 1.0)),
        innovation=pick(args.innovation, "innovation", InnovationKind.IID_GAUSSIAN),
        n_sim=pick(args.n_sim, "n_sim", 300_000),
        seed=_resolve_seed(args),
        sigma=args.sigma,
        gamma_k=args.gamma_k,
        a=args.a,
        p=args.p,
        m=args.m,
        cap_n=args.cap_n,
        ols=OlsOptions(args.ols_demean, args.ols_intercept, args.degenerate_policy),
        theta_min=args.theta_min,
        pu_time_offset=pick(args.pu_time_offset, "pu_time_offset", 0),
    )
    r_list = pick(args.r, "r_list", R_ALL)
    d_list = pick(args.d, "d_list", D_ALL)
    reports = run_panel(config, r_list, d_list, workers=args.workers)
    if args.format == "markdown":
        return FORMATTERS["markdown"](reports, preset.title if preset else None)
    return FORMATTERS[args.format](reports)


COMMANDS = {
    "transfer": ("transfer", _cmd_transfer),
    "kernel": ("kernel", _cmd_kernel),
    "simulate": ("simulate", _cmd_simulate),
    "run-panel": ("experiment", _cmd_run_panel),
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        module, command = COMMANDS[args.command]
        text = command(args)
    except UsageError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    except (BreakcastError, ArithmeticError) as exc:
        print(f"{PROG}: {module}: numerical failure: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
