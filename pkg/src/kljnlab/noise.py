"""Band-limited Gaussian (Johnson-like) noise sources and spectral estimation.

Noise generators emulate thermal noise of a resistor at a publicly agreed
effective temperature: white Gaussian voltage noise with one-sided spectral
density 4*k*T_eff*R, band-limited to a publicly agreed bandwidth.  Traces are
sampled well above the Nyquist rate of the band so that switching transients
and derivative estimates stay resolvable.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import signal

BOLTZMANN = 1.380649e-23  # J/K, exact SI value

#: default ratio of sample_rate to the independent-sample rate 2*bandwidth
DEFAULT_OVERSAMPLE = 20


def johnson_spectral_density(t_eff: float, resistance: float) -> float:
    """One-sided Johnson noise voltage density 4*k*T_eff*R in V^2/Hz."""
    if t_eff < 0 or resistance < 0:
        raise ValueError("temperature and resistance must be non-negative")
    return 4.0 * BOLTZMANN * t_eff * resistance


@dataclass(frozen=True)
class RngStream:
    """Deterministic random stream keyed by (master_seed, stream_id).

    Identical keys give identical sample sequences regardless of execution
    order, which is what makes campaign reruns byte-identical.  Sub-streams
    for independent sources/trials are derived with :meth:`child`.
    """

    master_seed: int
    stream_id: tuple[int, ...] = ()

    def __post_init__(self):
        if not all(isinstance(i, (int, np.integer)) and i >= 0 for i in self.stream_id):
            raise ValueError("stream_id must be a tuple of non-negative integers")

    def child(self, *ids: int) -> "RngStream":
        return RngStream(self.master_seed, self.stream_id + tuple(int(i) for i in ids))

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master_seed, spawn_key=self.stream_id)
        return np.random.default_rng(seq)


@dataclass(frozen=True)
class NoiseSpec:
    """Description of one band-limited Gaussian source.

    spectral_density is the one-sided in-band value (V^2/Hz), bandwidth the
    upper edge of the white region (Hz), and duration the trace length (s).
    """

    spectral_density: float
    bandwidth: float
    sample_rate: float
    duration: float

    def __post_init__(self):
        if self.spectral_density < 0:
            raise ValueError("spectral_density must be >= 0")
        if self.bandwidth <= 0 or self.duration <= 0:
            raise ValueError("bandwidth and duration must be > 0")
        if self.sample_rate < 10 * 2 * self.bandwidth:
            raise ValueError(
                "sample_rate must be at least 10x the independent-sample "
                "rate 2*bandwidth"
            )

    @classmethod
    def for_band(
        cls,
        spectral_density: float,
        bandwidth: float,
        duration: float,
        oversample: int = DEFAULT_OVERSAMPLE,
    ) -> "NoiseSpec":
        return cls(spectral_density, bandwidth, oversample * 2 * bandwidth, duration)

    @property
    def n_samples(self) -> int:
        return int(round(self.duration * self.sample_rate))

    @property
    def oversample(self) -> int:
        return int(round(self.sample_rate / (2 * self.bandwidth)))


@dataclass
class SampleTrace:
    """A sampled amplitude trace (V or A) with uniform spacing dt."""

    samples: np.ndarray
    dt: float

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        if self.samples.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples must be finite")
        if self.dt <= 0:
            raise ValueError("dt must be positive")

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.samples.size * self.dt

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.samples.size) * self.dt

    def mean_square(self) -> float:
        return float(np.mean(self.samples**2))


def band_limit(white: np.ndarray, sample_rate: float, bandwidth: float) -> np.ndarray:
    """Apply an exact brick-wall low-pass (and DC removal) in the DFT domain.

    Works on the last axis, so a (trials, samples) matrix filters each row.
    Bins at 0 < f <= bandwidth are kept; DC is zeroed so traces are exactly
    zero-mean.
    """
    n = white.shape[-1]
    spectrum = np.fft.rfft(white, axis=-1)
    freqs = np.fft.rfftfreq(n, d=1.0 / sample_rate)
    keep = (freqs > 0) & (freqs <= bandwidth * (1 + 1e-12))
    spectrum[..., ~keep] = 0.0
    return np.fft.irfft(spectrum, n=n, axis=-1)


def generate_noise_matrix(
    spec: NoiseSpec, rng: RngStream, count: int
) -> np.ndarray:
    """Matrix of `count` independent traces drawn from one stream, one per row.

    This is the batched workhorse behind :func:`generate_noise`; sessions use
    it to synthesize many bit-exchange periods in one FFT pass.
    """
    n = spec.n_samples
    if n < 2:
        raise ValueError("duration * sample_rate must give at least 2 samples")
    if spec.spectral_density == 0.0:
        return np.zeros((count, n))
    sigma = np.sqrt(spec.spectral_density * spec.sample_rate / 2.0)
    white = rng.generator().standard_normal((count, n)) * sigma
    return band_limit(white, spec.sample_rate, spec.bandwidth)


def generate_noise(spec: NoiseSpec, rng: RngStream) -> SampleTrace:
    """One band-limited Gaussian trace; pure function of (spec, rng).

    The in-band one-sided density equals spec.spectral_density, so the trace
    variance converges to spectral_density * bandwidth.
    """
    samples = generate_noise_matrix(spec, rng, 1)[0]
    return SampleTrace(samples, 1.0 / spec.sample_rate)


def estimate_psd(
    trace: SampleTrace, segment_length: int
) -> tuple[np.ndarray, np.ndarray]:
    """One-sided averaged-periodogram PSD over non-overlapping segments.

    Rectangular window, no detrending; the convention is pinned by the sine
    calibration in the test suite (a full-scale bin integrates to A^2/2).
    Returns (frequencies, densities).
    """
    n = len(trace)
    if segment_length < 2 or segment_length & (segment_length - 1):
        raise ValueError("segment_length must be a power of two >= 2")
    if segment_length > n:
        raise ValueError("trace shorter than one segment")
    fs = 1.0 / trace.dt
    freqs, psd = signal.welch(
        trace.samples,
        fs=fs,
        window="boxcar",
        nperseg=segment_length,
        noverlap=0,
        detrend=False,
        scaling="density",
        return_onesided=True,
    )
    return freqs, psd


def in_band_density(
    freqs: np.ndarray, psd: np.ndarray, bandwidth: float
) -> float:
    """Mean estimated density over 0 < f <= bandwidth."""
    band = (freqs > 0) & (freqs <= bandwidth * (1 + 1e-12))
    if not np.any(band):
        raise ValueError("no PSD bins inside the band")
    return float(np.mean(psd[band]))


def effective_sample_count(bandwidth: float, duration: float) -> float:
    """Number of statistically independent samples, 2 * bandwidth * duration."""
    if bandwidth <= 0 or duration < 0:
        raise ValueError("bandwidth must be > 0 and duration >= 0")
    return 2.0 * bandwidth * duration


def decimate_to_independent(samples: np.ndarray, oversample: int) -> np.ndarray:
    """Keep every oversample-th sample along the last axis.

    For brick-wall band-limited noise sampled at oversample * 2 * bandwidth,
    the retained samples are mutually independent (the autocorrelation has
    zeros on that grid), which is what the statistical bounds of the form
    4/sqrt(n) assume.
    """
    if oversample < 1:
        raise ValueError("oversample must be >= 1")
    return samples[..., ::oversample]
