"""One-step-ahead forecasts of ``x(d)`` from the learning sequence ``x(0..d-1)``.

Batch functions operate row-wise on 2-D arrays and accumulate in a fixed
elementwise order (no BLAS reductions), so each row's result is bitwise
independent of how rows are grouped into batches.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from breakcast.errors import DegenerateSequenceError, DomainError
from breakcast.kernel import ImpulseResponse
from breakcast.simulate import BreakModel, Path

DEGENERATE_THRESHOLD = 1e-12


class DegeneratePolicy(str, enum.Enum):
    ZERO_SLOPE = "zero-slope"
    ERROR = "error"


@dataclass(frozen=True)
class OlsOptions:
    """AR(1) least-squares variant.

    The default regresses ``x(t)`` on ``x(t-1)`` through the origin.
    ``demean`` centres the series by its sample mean first and forecasts
    around that mean; ``intercept`` fits a free constant.
    """

    demean: bool = False
    intercept: bool = False
    degenerate_policy: DegeneratePolicy = DegeneratePolicy.ZERO_SLOPE

    def __post_init__(self) -> None:
        object.__setattr__(self, "degenerate_policy", DegeneratePolicy(self.degenerate_policy))


@dataclass(frozen=True)
class ForecastSet:
    y_k: float
    y_kh: float
    y_ideal: float
    y_ar1: float
    target: float


def _rows(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[None, :] if x.ndim == 1 else x


def predict_kernel_batch(x: np.ndarray, taps: np.ndarray) -> np.ndarray:
    """``sum_tau h(d-1-tau) x(tau)`` per row of ``x`` (shape ``(n, d)``)."""
    x = _rows(x)
    d = x.shape[1]
    if taps.shape[0] < d:
        raise DomainError(f"need {d} taps, got {taps.shape[0]}")
    out = np.zeros(x.shape[0])
    for tau in range(d):
        out = out + taps[d - 1 - tau] * x[:, tau]
    return out


def predict_kernel(x, taps: ImpulseResponse) -> float:
    x = np.asarray(x, dtype=float)
    return float(predict_kernel_batch(x, taps.window(x.size))[0])


def _row_sum(a: np.ndarray) -> np.ndarray:
    out = np.zeros(a.shape[0])
    for j in range(a.shape[1]):
        out = out + a[:, j]
    return out


def fit_ar1_batch(
    x: np.ndarray, opts: OlsOptions = OlsOptions()
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Least-squares AR(1) fit per row.

    Returns
    -------
    slope : ndarray
        Estimated coefficient.
    level : ndarray
        Centre the forecast is made around (0 unless demeaned).
    const : ndarray
        Fitted intercept (0 unless ``opts.intercept``).
    degenerate : ndarray of bool
        Rows whose design fell below the degeneracy threshold.
    """
    x = _rows(x)
    if x.shape[1] < 3:
        raise DomainError(f"AR(1) fit needs at least 3 observations, got {x.shape[1]}")
    level = np.zeros(x.shape[0])
    if opts.demean:
        level = _row_sum(x) / x.shape[1]
        x = x - level[:, None]
    lagged, current = x[:, :-1], x[:, 1:]
    if opts.intercept:
        n = lagged.shape[1]
        mean_lag = _row_sum(lagged) / n
        mean_cur = _row_sum(current) / n
        num = _row_sum((lagged - mean_lag[:, None]) * (current - mean_cur[:, None]))
        den = _row_sum((lagged - mean_lag[:, None]) ** 2)
    else:
        num = _row_sum(lagged * current)
        den = _row_sum(lagged * lagged)
    degenerate = den < DEGENERATE_THRESHOLD
    slope = np.where(degenerate, 0.0, num / np.where(degenerate, 1.0, den))
    const = np.zeros(x.shape[0])
    if opts.intercept:
        const = mean_cur - slope * mean_lag
    return slope, level, const, degenerate


def predict_ar1_batch(x: np.ndarray, opts: OlsOptions = OlsOptions()) -> tuple[np.ndarray, np.ndarray]:
    """AR(1) forecasts and the degeneracy mask."""
    x = _rows(x)
    slope, level, const, degenerate = fit_ar1_batch(x, opts)
    forecast = level + const + slope * (x[:, -1] - level)
    return forecast, degenerate


def estimate_ar1(x, opts: OlsOptions = OlsOptions()) -> float:
    """Least-squares AR(1) coefficient of one sequence.

    Raises
    ------
    DegenerateSequenceError
        If the design is singular and ``opts.degenerate_policy`` is ``ERROR``.
    """
    slope, _, _, degenerate = fit_ar1_batch(np.asarray(x, dtype=float), opts)
    if degenerate[0] and opts.degenerate_policy is DegeneratePolicy.ERROR:
        raise DegenerateSequenceError("AR(1) design variance below threshold")
    return float(slope[0])


def predict_ideal(model: BreakModel, x) -> float:
    """Infeasible benchmark: the true post-break coefficient times ``x(d-1)``."""
    if model.theta > model.d - 2:
        raise DomainError("the ideal predictor needs the break before d - 1")
    return model.beta2 * float(np.asarray(x)[-1])


def forecast_all(
    path: Path,
    taps_k: ImpulseResponse,
    taps_kh: ImpulseResponse,
    opts: OlsOptions = OlsOptions(),
) -> ForecastSet:
    x = path.learning
    ar1, degenerate = predict_ar1_batch(x, opts)
    if degenerate[0] and opts.degenerate_policy is DegeneratePolicy.ERROR:
        raise DegenerateSequenceError(f"trial {path.trial_index}: AR(1) design variance below threshold")
    return ForecastSet(
        y_k=predict_kernel(x, taps_k),
        y_kh=predict_kernel(x, taps_kh),
        y_ideal=predict_ideal(path.model, x),
        y_ar1=float(ar1[0]),
        target=path.target,
    )
