"""N00N-state interference patterns and second-order correlation traces.

The coincidence probability versus interferometer delay for a pair source
with normalized sum-frequency density F is

    P(t) = (1 + sum_k F(nu_k) cos(2 pi nu_k t) * step) / 2

so the oscillation period tracks the sum frequency and the envelope is
the Fourier pair of the spectral lineshape. The affine rescale
G = 2P - 1 is then the discrete cosine transform of F, which is what the
recovery stage inverts.

The forward synthesis deliberately sums over the spectral bins directly
(no FFT): spectra live on arbitrary uniform grids, and the forward pass
is not a bottleneck. Evaluation is chunked over delay points; results
are bit-identical for any chunk size because each delay point reduces
over the full spectrum with a fixed pairwise summation order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import hilbert

from .errors import AliasingError, NoSignalError, WindowTooShortError
from .grids import TimeGrid
from .spectral import SumFrequencySpectrum, _as_readonly

DEFAULT_TIME_STEP = 5e-4  # ps; Nyquist-safe for the 740 THz band
DEFAULT_TIME_COUNT = 2**16

RANGE_TOL = 1e-9


def default_time_grid(
    step: float = DEFAULT_TIME_STEP, count: int = DEFAULT_TIME_COUNT
) -> TimeGrid:
    """Delay grid centered on zero; the default window is 32.768 ps."""
    return TimeGrid(start=-(count // 2) * step, step=step, count=count)


@dataclass(frozen=True)
class Interferogram:
    """Coincidence probability P(t) on a uniform delay grid."""

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        v = _as_readonly(self.values)
        object.__setattr__(self, "values", v)
        if v.shape != (self.grid.count,):
            raise ValueError("values length does not match grid count")
        if not np.all(np.isfinite(v)):
            raise ValueError("interferogram values must be finite")
        if np.any(v < -RANGE_TOL) or np.any(v > 1 + RANGE_TOL):
            raise ValueError("interferogram values must lie in [0, 1]")


@dataclass(frozen=True)
class CorrelationTrace:
    """Second-order correlation G(t) on a uniform delay grid, |G| <= 1."""

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        v = _as_readonly(self.values)
        object.__setattr__(self, "values", v)
        if v.shape != (self.grid.count,):
            raise ValueError("values length does not match grid count")
        if not np.all(np.isfinite(v)):
            raise ValueError("trace values must be finite")
        if np.any(np.abs(v) > 1 + RANGE_TOL):
            raise ValueError("trace values must lie in [-1, 1]")


def simulate_interferogram(
    spectrum: SumFrequencySpectrum, grid: TimeGrid, chunk_size: int = 8192
) -> Interferogram:
    """Synthesize P(t) from a normalized sum-frequency spectrum.

    ``chunk_size`` only controls memory use; the result is independent of
    it bit-for-bit.
    """
    if not spectrum.normalized:
        raise ValueError("spectrum must be normalized before simulation")
    if chunk_size < 1:
        raise ValueError("chunk_size must be positive")
    nu = spectrum.grid.values
    scaled = spectrum.weights * spectrum.grid.step
    t = grid.values
    values = np.empty(grid.count)
    for lo in range(0, grid.count, chunk_size):
        block = t[lo : lo + chunk_size, None] * nu[None, :]
        np.cos(2.0 * np.pi * block, out=block)
        block *= scaled[None, :]
        values[lo : lo + chunk_size] = 0.5 * (1.0 + block.sum(axis=1))
    # guard the [0, 1] invariant against accumulated rounding
    np.clip(values, 0.0, 1.0, out=values)
    return Interferogram(grid, values)


def correlation_trace(
    interferogram: Interferogram, sign_convention: int = +1
) -> CorrelationTrace:
    """G(t) = 2P(t) - 1, the cosine transform of the source spectrum.

    ``sign_convention=-1`` selects the inverted form G = 1 - 2P for
    workflows that define the correlation with the opposite sign; the
    default keeps G(0) = +1 for normalized spectra.
    """
    if sign_convention not in (+1, -1):
        raise ValueError("sign_convention must be +1 or -1")
    return CorrelationTrace(
        interferogram.grid, sign_convention * (2.0 * interferogram.values - 1.0)
    )


def envelope(trace: CorrelationTrace) -> np.ndarray:
    """Magnitude of the analytic (positive-frequency) reconstruction of G."""
    return np.abs(hilbert(np.asarray(trace.values)))


def envelope_coherence_time(trace: CorrelationTrace) -> float:
    """FWHM of the interference envelope, in ps.

    Raises :class:`WindowTooShortError` when the envelope has not decayed
    below half maximum inside the scanned window (including the
    monochromatic limit, where the envelope is flat).
    """
    env = envelope(trace)
    peak = env.max()
    if peak <= 0:
        raise NoSignalError("trace is identically zero")
    half = 0.5 * peak
    ipk = int(np.argmax(env))
    if env[0] >= half or env[-1] >= half:
        raise WindowTooShortError("envelope is not contained in the delay window")

    def _cross(start: int, direction: int) -> float:
        i = start
        while env[i] >= half:
            i += direction
        # linear interpolation between the bracketing samples
        f = (env[i - direction] - half) / (env[i - direction] - env[i])
        return (i - direction) + direction * f

    left = _cross(ipk, -1)
    right = _cross(ipk, +1)
    return float((right - left) * trace.grid.step)


def dominant_oscillation_frequency(
    trace: CorrelationTrace, max_expected_thz: float | None = None
) -> float:
    """Frequency (THz) of the strongest line in the one-sided power spectrum.

    The DC bin is excluded. Ties resolve to the lower frequency (first
    maximum). If ``max_expected_thz`` is given, the delay step is checked
    against it and :class:`AliasingError` raised when Nyquist is violated.
    """
    if max_expected_thz is not None and trace.grid.step >= 1.0 / (2.0 * max_expected_thz):
        raise AliasingError(
            f"time step {trace.grid.step} ps aliases content at {max_expected_thz} THz"
        )
    g = np.asarray(trace.values)
    if not np.any(g != 0.0):
        raise NoSignalError("trace is identically zero")
    power = np.abs(np.fft.rfft(g)) ** 2
    freqs = np.fft.rfftfreq(trace.grid.count, d=trace.grid.step)
    k = 1 + int(np.argmax(power[1:]))
    return float(freqs[k])
