"""Monte Carlo comparison of the four predictors.

A scenario cell fixes the coefficient ranges, the innovation law, the
kernel parameter ``r`` and the sequence length ``d``.  Trials are split
into fixed-size chunks that can run in worker processes; squared errors
are gathered in trial order and summed once, so results are bitwise
identical for any worker count.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from breakcast.errors import DegenerateSequenceError, DomainError
from breakcast.kernel import kernel_taps
from breakcast.predictors import DegeneratePolicy, OlsOptions, predict_ar1_batch, predict_kernel_batch
from breakcast.simulate import (
    InnovationKind,
    check_range,
    draw_innovations_batch,
    draw_models_batch,
    simulate_paths,
)
from breakcast.transfer import KernelSpec, Variant

CHUNK_SIZE = 1 << 15
DEFAULT_SEED = 20170101
CSV_COLUMNS = (
    "r", "d", "e_ideal", "e_ar1", "e_k", "e_kh",
    "ratio_ideal", "ratio_k", "ratio_kh", "n_sim", "seed",
)


@dataclass(frozen=True)
class ScenarioConfig:
    beta1_range: tuple[float, float] = (0.0, 1.0)
    beta2_range: tuple[float, float] = (0.0, 1.0)
    innovation: InnovationKind = InnovationKind.IID_GAUSSIAN
    r: float = 0.8
    d: int = 4
    n_sim: int = 300_000
    seed: int = DEFAULT_SEED
    sigma: float = 0.3
    gamma_k: float = 1.1
    a: float = 0.6
    p: float = 0.7
    m: int = 2
    cap_n: int = 100
    ols: OlsOptions = field(default_factory=OlsOptions)
    theta_min: int = 2
    pu_time_offset: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "innovation", InnovationKind(self.innovation))
        object.__setattr__(self, "beta1_range", check_range("beta1_range", self.beta1_range))
        object.__setattr__(self, "beta2_range", check_range("beta2_range", self.beta2_range))
        if self.d < 4:
            raise DomainError(f"d must be >= 4, got {self.d}")
        if self.n_sim < 1:
            raise DomainError(f"n_sim must be >= 1, got {self.n_sim}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not (math.isfinite(self.sigma) and self.sigma >= 0):
            raise DomainError(f"sigma must be >= 0, got {self.sigma}")
        if self.theta_min not in (1, 2):
            raise DomainError(f"theta_min must be 1 or 2, got {self.theta_min}")
        # validates the kernel parameters up front
        self.kernel_spec(Variant.SMOOTHED_PREDICT)

    def kernel_spec(self, variant: Variant | str) -> KernelSpec:
        return KernelSpec.build(
            variant, r=self.r, gamma_k=self.gamma_k, a=self.a, p=self.p, m=self.m, cap_n=self.cap_n
        )

    def replace(self, **changes) -> ScenarioConfig:
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class RmseReport:
    e_ideal: float
    e_ar1: float
    e_k: float
    e_kh: float
    n_sim: int
    config: ScenarioConfig

    @property
    def ratio_ideal(self) -> float:
        return _ratio(self.e_ideal, self.e_ar1)

    @property
    def ratio_k(self) -> float:
        return _ratio(self.e_k, self.e_ar1)

    @property
    def ratio_kh(self) -> float:
        return _ratio(self.e_kh, self.e_ar1)

    def as_row(self) -> dict:
        return {
            "r": self.config.r,
            "d": self.config.d,
            "e_ideal": self.e_ideal,
            "e_ar1": self.e_ar1,
            "e_k": self.e_k,
            "e_kh": self.e_kh,
            "ratio_ideal": self.ratio_ideal,
            "ratio_k": self.ratio_k,
            "ratio_kh": self.ratio_kh,
            "n_sim": self.n_sim,
            "seed": self.config.seed,
        }


def _ratio(num: float, den: float) -> float:
    if den == 0:
        return math.nan if num == 0 else math.inf
    return num / den


def simulate_block(config: ScenarioConfig, trials: np.ndarray, taps_k: np.ndarray, taps_kh: np.ndarray) -> dict:
    """Paths and forecasts for the given trial indices.

    Returns a dict of per-trial arrays: ``x`` (shape ``(n, d + 1)``),
    ``eta``, ``beta1``, ``beta2``, ``theta``, ``y_k``, ``y_kh``, ``y_ideal``,
    ``y_ar1``, ``target`` and ``degenerate``.
    """
    d = config.d
    beta1, beta2, theta = draw_models_batch(
        config.beta1_range, config.beta2_range, d, trials, config.seed, theta_min=config.theta_min
    )
    eta = draw_innovations_batch(
        config.innovation, d, trials, config.seed, pu_time_offset=config.pu_time_offset
    )
    x = simulate_paths(beta1, beta2, theta, config.sigma, eta)
    learning = x[:, :d]
    y_ar1, degenerate = predict_ar1_batch(learning, config.ols)
    return {
        "trials": trials,
        "x": x,
        "eta": eta,
        "beta1": beta1,
        "beta2": beta2,
        "theta": theta,
        "y_k": predict_kernel_batch(learning, taps_k),
        "y_kh": predict_kernel_batch(learning, taps_kh),
        "y_ideal": beta2 * learning[:, -1],
        "y_ar1": y_ar1,
        "target": x[:, d],
        "degenerate": degenerate,
    }


def _squared_errors(args) -> np.ndarray:
    config, start, stop, taps_k, taps_kh = args
    block = simulate_block(config, np.arange(start, stop), taps_k, taps_kh)
    if config.ols.degenerate_policy is DegeneratePolicy.ERROR and block["degenerate"].any():
        bad = int(block["trials"][np.argmax(block["degenerate"])])
        raise DegenerateSequenceError(f"trial {bad}: AR(1) design variance below threshold")
    target = block["target"]
    return np.stack(
        [(target - block[key]) ** 2 for key in ("y_ideal", "y_ar1", "y_k", "y_kh")]
    )


def _chunks(n_sim: int) -> list[tuple[int, int]]:
    return [(s, min(s + CHUNK_SIZE, n_sim + 1)) for s in range(1, n_sim + 1, CHUNK_SIZE)]


def scenario_taps(config: ScenarioConfig) -> tuple[np.ndarray, np.ndarray]:
    """Production taps ``h(0..d-1)`` for the K and K*F predictors."""
    taps_k = kernel_taps(config.kernel_spec(Variant.PREDICT_ONLY), config.d).window(config.d)
    taps_kh = kernel_taps(config.kernel_spec(Variant.SMOOTHED_PREDICT), config.d).window(config.d)
    return taps_k, taps_kh


def run_scenario(config: ScenarioConfig, *, executor: Executor | None = None) -> RmseReport:
    """RMSE of each predictor over ``config.n_sim`` trials.

    Pass an executor to spread chunks over workers; the result does not
    depend on it.
    """
    taps_k, taps_kh = scenario_taps(config)
    jobs = [(config, start, stop, taps_k, taps_kh) for start, stop in _chunks(config.n_sim)]
    mapper = executor.map if executor is not None else map
    squared = np.concatenate(list(mapper(_squared_errors, jobs)), axis=1)
    # contiguous rows so np.sum uses pairwise summation
    e_ideal, e_ar1, e_k, e_kh = (
        math.sqrt(float(np.sum(np.ascontiguousarray(row))) / config.n_sim) for row in squared
    )
    return RmseReport(e_ideal, e_ar1, e_k, e_kh, config.n_sim, config)


def run_panel(
    template: ScenarioConfig,
    r_list,
    d_list,
    *,
    workers: int = 1,
) -> list[RmseReport]:
    """One report per ``(r, d)``, ordered by ``r`` then ``d``."""
    r_list, d_list = list(r_list), list(d_list)
    if not r_list or not d_list:
        raise DomainError("r_list and d_list must be non-empty")
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")
    cells = [template.replace(r=float(r), d=int(d)) for r in r_list for d in d_list]
    if workers == 1:
        return [run_scenario(cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [run_scenario(cell, executor=pool) for cell in cells]


def format_csv(reports: list[RmseReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in report.as_row().items()})
    return buf.getvalue()


def format_json(reports: list[RmseReport]) -> str:
    return json.dumps([report.as_row() for report in reports], indent=2) + "\n"


def format_markdown(reports: list[RmseReport], title: str | None = None) -> str:
    """Table in the published column order, five decimals, blank row between r groups."""
    header = "| | e_ideal | e_AR(1) | e_K | e_KH | e_ideal/e_AR(1) | e_K/e_AR(1) | e_KH/e_AR(1) |"
    lines = []
    if title:
        lines += [title, ""]
    lines += [header, "|" + "---|" * 8]
    previous_r = None
    for report in reports:
        if previous_r is not None and report.config.r != previous_r:
            lines.append("| " + " | " * 7 + " |")
        previous_r = report.config.r
        values = (
            report.e_ideal, report.e_ar1, report.e_k, report.e_kh,
            report.ratio_ideal, report.ratio_k, report.ratio_kh,
        )
        label = f"r = {report.config.r:g}, d={report.config.d}"
        lines.append(f"| {label} | " + " | ".join(f"{v:.5f}" for v in values) + " |")
    return "\n".join(lines) + "\n"


FORMATTERS = {"csv": format_csv, "json": format_json, "markdown": format_markdown}
