"""Transfer functions of the predicting kernel and the causal smoother.

All evaluators accept a complex scalar or a complex ``numpy`` array and
return a value of the same shape.  Parameters are real, so every function
here satisfies ``f(conj(z)) == conj(f(z))``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from breakcast.errors import DomainError, SingularityError

GUARD_RADIUS = 1e-9


@dataclass(frozen=True)
class PredictorParams:
    """Parameters of the predicting kernel ``K``.

    ``gamma_k`` is the kernel's own gamma, not the smoother's ``gamma(a, p)``.
    """

    gamma_k: float = 1.1
    r: float = 0.8

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gamma_k) and self.gamma_k > 0):
            raise DomainError(f"gamma_k must be > 0, got {self.gamma_k!r}")
        if not (math.isfinite(self.r) and self.r > 0):
            raise DomainError(f"r must be > 0, got {self.r!r}")

    @property
    def pole(self) -> float:
        """Point where the exponent of ``K`` blows up."""
        return self.gamma_k ** (-self.r) - 1.0


@dataclass(frozen=True)
class SmootherParams:
    """Parameters of the smoothing filter ``F``; ``cap_n`` is the order of the
    ``z**-N`` term."""

    a: float = 0.6
    p: float = 0.7
    m: int = 2
    cap_n: int = 100

    def __post_init__(self) -> None:
        _check_ap(self.a, self.p)
        if int(self.m) != self.m or self.m < 1:
            raise DomainError(f"m must be an integer >= 1, got {self.m!r}")
        if int(self.cap_n) != self.cap_n or self.cap_n < 1:
            raise DomainError(f"cap_n must be an integer >= 1, got {self.cap_n!r}")


class Variant(str, enum.Enum):
    PREDICT_ONLY = "k"
    SMOOTHED_PREDICT = "kh"


@dataclass(frozen=True)
class KernelSpec:
    """Which predictor to build: ``K`` alone or the product ``K * F``."""

    variant: Variant
    predictor: PredictorParams
    smoother: SmootherParams | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.variant is Variant.SMOOTHED_PREDICT and self.smoother is None:
            raise DomainError("smoothed variant requires smoother parameters")
        if self.variant is Variant.PREDICT_ONLY and self.smoother is not None:
            raise DomainError("predict-only variant takes no smoother parameters")

    @classmethod
    def build(
        cls,
        variant: Variant | str,
        *,
        r: float,
        gamma_k: float = 1.1,
        a: float = 0.6,
        p: float = 0.7,
        m: int = 2,
        cap_n: int = 100,
    ) -> KernelSpec:
        """Convenience constructor that drops smoother params for ``K``."""
        variant = Variant(variant)
        smoother = None
        if variant is Variant.SMOOTHED_PREDICT:
            smoother = SmootherParams(a=a, p=p, m=m, cap_n=cap_n)
        return cls(variant, PredictorParams(gamma_k=gamma_k, r=r), smoother)


def _check_ap(a: float, p: float) -> None:
    if not 0.0 < a < 1.0:
        raise DomainError(f"a must lie in (0, 1), got {a!r}")
    if not 0.5 < p < 1.0:
        raise DomainError(f"p must lie in (1/2, 1), got {p!r}")


def _guard(z, point: complex, what: str) -> None:
    if np.any(np.abs(np.asarray(z) - point) < GUARD_RADIUS):
        raise SingularityError(f"{what}: z within {GUARD_RADIUS:g} of singular point {point}")


def _finite(value, what: str):
    with np.errstate(invalid="ignore"):
        ok = np.all(np.isfinite(value))
    if not ok:
        raise SingularityError(f"{what}: non-finite value near a singular point")
    return value if np.ndim(value) else complex(value)


def _inverse_power(z, n: int):
    """``z**-n`` by binary exponentiation of ``1/z`` (no complex log)."""
    base = 1.0 / np.asarray(z, dtype=complex)
    result = np.ones_like(base)
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result if result.ndim else complex(result)


def eval_xi(a: float, p: float) -> float:
    """``exp(-(1 - a)**(p - 1))``, always in (0, 1)."""
    _check_ap(a, p)
    return math.exp(-((1.0 - a) ** (p - 1.0)))


def eval_gamma_ap(a: float, p: float) -> float:
    """``|1 - a|**(p - 2) * xi(a, p)``."""
    return abs(1.0 - a) ** (p - 2.0) * eval_xi(a, p)


def eval_K(z, params: PredictorParams):
    """Predicting kernel ``z * (1 - exp(-gamma / (z + 1 - gamma**-r)))``."""
    _guard(z, params.pole, "K")
    z = np.asarray(z, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        out = z * (1.0 - np.exp(-params.gamma_k / (z - params.pole)))
    return _finite(out, "K")


def eval_G(z, params: SmootherParams):
    """Correction term ``-xi + (gamma(a,p)/N) * ((-1)**N * z**-N - 1)``."""
    _guard(z, 0.0, "G")
    xi = eval_xi(params.a, params.p)
    g = eval_gamma_ap(params.a, params.p)
    sign = -1.0 if params.cap_n % 2 else 1.0
    with np.errstate(over="ignore", invalid="ignore"):
        out = -xi + (g / params.cap_n) * (sign * _inverse_power(z, params.cap_n) - 1.0)
    return _finite(out, "G")


def eval_F(z, params: SmootherParams):
    """Smoothing filter ``(exp((1-a)**p / (z + a)) + G(z))**m``."""
    _guard(z, -params.a, "F")
    z = np.asarray(z, dtype=complex)
    g = eval_G(z, params)
    with np.errstate(over="ignore", invalid="ignore"):
        base = np.exp((1.0 - params.a) ** params.p / (z + params.a)) + g
        out = base
        for _ in range(params.m - 1):
            out = out * base
    return _finite(np.asarray(out), "F")


def eval_H(z, spec: KernelSpec):
    """Transfer function of the selected predictor."""
    k = eval_K(z, spec.predictor)
    if spec.variant is Variant.PREDICT_ONLY:
        return k
    return k * eval_F(z, spec.smoother)
