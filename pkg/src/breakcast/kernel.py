"""Impulse responses of the predictors, from their transfer functions.

Two independent routes to ``h(t) = (1/2pi) int H(e^{iw}) e^{iwt} dw``:

* :func:`impulse_response_fft` samples ``H`` at ``M`` roots of unity and
  inverts with an FFT.  The result is the aliased sum ``sum_j h(t + jM)``,
  which converges geometrically for the kernels used here.
* :func:`impulse_response_quadrature` integrates the folded real integrand
  ``(1/pi) int_0^pi Re[H(e^{iw}) e^{iwt}] dw`` adaptively.

The FFT route is the production path; quadrature is the cross-check.
"""

from __future__ import annotations

import enum
import functools
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from breakcast.errors import ConvergenceError, DomainError, TapWindowError
from breakcast.quadrature import adaptive_gk15
from breakcast.transfer import KernelSpec, eval_H

DEFAULT_DFT_SIZE = 2**16
DEFAULT_ABS_TOL = 1e-10
MAX_IMAG_RESIDUAL = 1e-8

Transfer = Callable[[np.ndarray], np.ndarray]


class Method(str, enum.Enum):
    QUADRATURE = "quadrature"
    DFT_SAMPLING = "dft"


@dataclass(frozen=True)
class ImpulseResponse:
    """Real taps ``h(first_index), ..., h(first_index + len(taps) - 1)``.

    ``spec`` is ``None`` when the taps come from an injected transfer
    function rather than a :class:`KernelSpec`.
    """

    spec: KernelSpec | None
    first_index: int
    taps: np.ndarray
    max_imag_residual: float
    method: Method
    method_param: float

    def __post_init__(self) -> None:
        taps = np.array(self.taps, dtype=float)
        if taps.ndim != 1 or taps.size < 1:
            raise DomainError("an impulse response needs at least one tap")
        taps.flags.writeable = False
        object.__setattr__(self, "taps", taps)

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.first_index, self.first_index + self.taps.size)

    def window(self, count: int) -> np.ndarray:
        """Taps ``h(0), ..., h(count - 1)``."""
        if self.first_index != 0 or self.taps.size < count:
            raise TapWindowError(
                f"need taps 0..{count - 1}, have {self.first_index}.."
                f"{self.first_index + self.taps.size - 1}"
            )
        return self.taps[:count]


def _transfer_for(spec: KernelSpec | None, transfer: Transfer | None) -> Transfer:
    if transfer is not None:
        return transfer
    if spec is None:
        raise DomainError("either a kernel spec or a transfer function is required")
    return functools.partial(eval_H, spec=spec)


def impulse_response_fft(
    spec: KernelSpec | None,
    dft_size: int = DEFAULT_DFT_SIZE,
    first_index: int = 0,
    count: int = 6,
    *,
    transfer: Transfer | None = None,
) -> ImpulseResponse:
    """Taps by uniform sampling of ``H`` on the unit circle and an inverse FFT."""
    if dft_size < 1024 or dft_size & (dft_size - 1):
        raise DomainError(f"dft_size must be a power of two >= 1024, got {dft_size}")
    if not 1 <= count <= dft_size:
        raise DomainError(f"count must lie in [1, dft_size], got {count}")
    h = _transfer_for(spec, transfer)
    z = np.exp(2j * np.pi * np.arange(dft_size) / dft_size)
    samples = np.broadcast_to(np.asarray(h(z), dtype=complex), z.shape)
    coeffs = np.fft.ifft(samples)
    idx = np.arange(first_index, first_index + count) % dft_size
    window = coeffs[idx]
    return ImpulseResponse(
        spec=spec,
        first_index=first_index,
        taps=window.real,
        max_imag_residual=float(np.max(np.abs(window.imag))),
        method=Method.DFT_SAMPLING,
        method_param=float(dft_size),
    )


def impulse_response_quadrature(
    spec: KernelSpec | None,
    first_index: int = 0,
    count: int = 6,
    abs_tol: float = DEFAULT_ABS_TOL,
    *,
    transfer: Transfer | None = None,
    initial_intervals: int = 128,
    max_intervals: int = 100_000,
) -> ImpulseResponse:
    """Taps by adaptive Gauss-Kronrod integration of the inverse Z-transform.

    All taps in the window are integrated together as one vector integrand.
    The imaginary part is integrated separately over the full circle so that
    ``max_imag_residual`` reflects what the fold discards.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    if not abs_tol > 0:
        raise DomainError(f"abs_tol must be > 0, got {abs_tol}")
    h = _transfer_for(spec, transfer)
    t = np.arange(first_index, first_index + count)

    def folded(w: np.ndarray) -> np.ndarray:
        values = np.broadcast_to(np.asarray(h(np.exp(1j * w)), dtype=complex), w.shape)
        return (values[:, None] * np.exp(1j * np.outer(w, t))).real / math.pi

    def imaginary(w: np.ndarray) -> np.ndarray:
        values = np.broadcast_to(np.asarray(h(np.exp(1j * w)), dtype=complex), w.shape)
        return (values[:, None] * np.exp(1j * np.outer(w, t))).imag / (2 * math.pi)

    taps, _, _ = adaptive_gk15(
        folded, 0.0, math.pi, abs_tol, initial_intervals, max_intervals
    )
    imag, _, _ = adaptive_gk15(
        imaginary, -math.pi, math.pi, abs_tol, 2 * initial_intervals, max_intervals
    )
    return ImpulseResponse(
        spec=spec,
        first_index=first_index,
        taps=taps,
        max_imag_residual=float(np.max(np.abs(imag))),
        method=Method.QUADRATURE,
        method_param=abs_tol,
    )


@functools.lru_cache(maxsize=256)
def kernel_taps(spec: KernelSpec, count: int, dft_size: int = DEFAULT_DFT_SIZE) -> ImpulseResponse:
    """Memoized production taps ``h(0..count-1)`` for ``spec``.

    Raises :class:`ArithmeticError` subclasses if the imaginary residual is
    too large to trust the real part.
    """
    response = impulse_response_fft(spec, dft_size, 0, count)
    if response.max_imag_residual > MAX_IMAG_RESIDUAL:
        raise ConvergenceError(
            f"kernel: imaginary residual {response.max_imag_residual:.3g} exceeds "
            f"{MAX_IMAG_RESIDUAL:g}"
        )
    return response
