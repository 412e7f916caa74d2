"""AR(1) paths with a single structural break.

``x(t) = beta(t) * x(t-1) + sigma * eta(t)`` for ``t = 0..d`` with
``x(-1) = 0`` and ``beta(t) = beta1`` for ``t < theta``, ``beta2`` otherwise.
The first ``d`` values form the learning sequence; ``x(d)`` is the target.

Batch functions take an array of 1-based trial indices and return one row
per trial.  The single-trial functions are thin wrappers, so a trial draws
the same numbers whichever way it is generated.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from breakcast import rng
from breakcast.errors import DomainError

SQRT2 = math.sqrt(2.0)
SQRT12 = math.sqrt(12.0)
GAMMA_SCALE = 2.0**-0.5


class InnovationKind(str, enum.Enum):
    IID_GAUSSIAN = "gaussian"
    SHIFTED_GAMMA = "gamma"
    SCALED_PSEUDO_UNIFORM = "pseudo-uniform"
    MA1_GAUSSIAN = "ma1"

    @property
    def stochastic(self) -> bool:
        return self is not InnovationKind.SCALED_PSEUDO_UNIFORM


@dataclass(frozen=True)
class BreakModel:
    beta1: float
    beta2: float
    theta: int
    sigma: float
    d: int

    def __post_init__(self) -> None:
        if not (abs(self.beta1) < 1 and abs(self.beta2) < 1):
            raise DomainError("AR coefficients must satisfy |beta| < 1")
        if self.d < 4:
            raise DomainError(f"d must be >= 4, got {self.d}")
        if not 1 <= self.theta <= self.d - 2:
            raise DomainError(f"theta must lie in 1..{self.d - 2}, got {self.theta}")
        if self.sigma < 0:
            raise DomainError(f"sigma must be >= 0, got {self.sigma}")

    def beta_at(self, t: int) -> float:
        return self.beta1 if t < self.theta else self.beta2


@dataclass(frozen=True)
class Path:
    x: np.ndarray
    model: BreakModel
    trial_index: int

    @property
    def learning(self) -> np.ndarray:
        return self.x[:-1]

    @property
    def target(self) -> float:
        return float(self.x[-1])


def check_range(name: str, bounds: tuple[float, float]) -> tuple[float, float]:
    lo, hi = (float(b) for b in bounds)
    if not -1.0 <= lo < hi <= 1.0:
        raise DomainError(f"{name} must be an interval inside (-1, 1), got ({lo}, {hi})")
    return lo, hi


def _trials(trials) -> np.ndarray:
    trials = np.atleast_1d(np.asarray(trials, dtype=np.int64))
    if trials.size and trials.min() < 1:
        raise DomainError("trial indices start at 1")
    return trials


def pseudo_uniform(t, s, time_offset: int = 0):
    """Deterministic ``sqrt(12) * (frac(exp(t + offset + 3 atan s)) - 1/2)``."""
    v = np.exp(np.asarray(t, dtype=float) + time_offset + 3.0 * np.arctan(np.asarray(s, dtype=float)))
    return SQRT12 * (v - np.floor(v) - 0.5)


def draw_innovations_batch(
    kind: InnovationKind | str,
    d: int,
    trials,
    seed: int,
    *,
    pu_time_offset: int = 0,
) -> np.ndarray:
    """Innovations ``eta(0..d)`` for each trial, shape ``(n_trials, d + 1)``.

    ``pu_time_offset`` shifts the time argument of the pseudo-uniform
    formula; 1 reproduces a 1-based time axis.
    """
    kind = InnovationKind(kind)
    if d < 4:
        raise DomainError(f"d must be >= 4, got {d}")
    trials = _trials(trials)
    purpose = rng.PURPOSE_INNOVATION
    if kind is InnovationKind.IID_GAUSSIAN:
        return rng.normals(seed, trials, purpose, d + 1)
    if kind is InnovationKind.SHIFTED_GAMMA:
        # Gamma(2, scale) as a sum of two exponentials
        u = rng.uniforms(seed, trials, purpose, 2 * (d + 1))
        return -GAMMA_SCALE * (np.log(u[:, 0::2]) + np.log(u[:, 1::2])) - SQRT2
    if kind is InnovationKind.MA1_GAUSSIAN:
        # column j holds eta0(j - 1); the extra leading draw is eta0(-1)
        base = rng.normals(seed, trials, purpose, d + 2)
        return (base[:, 1:] + base[:, :-1]) / SQRT2
    t = np.arange(d + 1)[None, :]
    return pseudo_uniform(t, trials[:, None], pu_time_offset)


def draw_innovations(
    kind: InnovationKind | str, d: int, trial_index: int, seed: int, *, pu_time_offset: int = 0
) -> np.ndarray:
    return draw_innovations_batch(kind, d, [trial_index], seed, pu_time_offset=pu_time_offset)[0]


def draw_models_batch(
    beta1_range: tuple[float, float],
    beta2_range: tuple[float, float],
    d: int,
    trials,
    seed: int,
    *,
    theta_min: int = 2,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-trial ``(beta1, beta2, theta)`` arrays.

    Coefficients are uniform on their intervals, ``theta`` uniform on
    ``{theta_min, ..., d - 2}``.
    """
    lo1, hi1 = check_range("beta1_range", beta1_range)
    lo2, hi2 = check_range("beta2_range", beta2_range)
    if theta_min not in (1, 2):
        raise DomainError(f"theta_min must be 1 or 2, got {theta_min}")
    if d < 4:
        raise DomainError(f"d must be >= 4, got {d}")
    trials = _trials(trials)
    u = rng.uniforms(seed, trials, rng.PURPOSE_MODEL, 3)
    beta1 = lo1 + (hi1 - lo1) * u[:, 0]
    beta2 = lo2 + (hi2 - lo2) * u[:, 1]
    n_theta = d - 2 - theta_min + 1
    theta = theta_min + np.minimum(np.floor(u[:, 2] * n_theta), n_theta - 1).astype(np.int64)
    return beta1, beta2, theta


def draw_model(
    beta1_range: tuple[float, float],
    beta2_range: tuple[float, float],
    d: int,
    sigma: float,
    trial_index: int,
    seed: int,
    *,
    theta_min: int = 2,
) -> BreakModel:
    b1, b2, th = draw_models_batch(beta1_range, beta2_range, d, [trial_index], seed, theta_min=theta_min)
    return BreakModel(float(b1[0]), float(b2[0]), int(th[0]), sigma, d)


def simulate_paths(beta1, beta2, theta, sigma: float, eta: np.ndarray) -> np.ndarray:
    """Run the break recursion row-wise; ``eta`` has shape ``(n, d + 1)``."""
    eta = np.asarray(eta, dtype=float)
    x = np.empty_like(eta)
    prev = np.zeros(eta.shape[0])
    for t in range(eta.shape[1]):
        beta = np.where(t < theta, beta1, beta2)
        prev = beta * prev + sigma * eta[:, t]
        x[:, t] = prev
    return x


def simulate_path(model: BreakModel, eta, trial_index: int = 1) -> Path:
    eta = np.asarray(eta, dtype=float)
    if eta.shape != (model.d + 1,):
        raise DomainError(f"eta must have length d + 1 = {model.d + 1}, got {eta.shape}")
    x = simulate_paths(
        np.array([model.beta1]), np.array([model.beta2]), np.array([model.theta]), model.sigma, eta[None, :]
    )[0]
    x.flags.writeable = False
    return Path(x=x, model=model, trial_index=trial_index)
