"""Key-level security arithmetic: per-bit advantage to variational distance.

An eavesdropper guessing each bit independently with success probability
p = 0.5 + q assembles the whole N-bit key with probability p^N, so the
distance to a uniformly distributed key is p^N - 0.5^N.  Those numbers
underflow binary64 around N = 1074, hence every distance here lives in the
natural-log domain and is only rendered to a decimal (mantissa, exponent)
pair at the reporting edge.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_LN10 = math.log(10.0)
_Z95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass(frozen=True)
class LogDelta:
    """A non-negative statistical distance stored as its natural log."""

    ln_value: float  # -inf encodes an exact zero

    @property
    def value(self) -> float:
        """Float value; underflows to 0.0 below ~1e-308."""
        return math.exp(self.ln_value) if self.ln_value > -745.0 else 0.0

    @property
    def log10(self) -> float:
        return self.ln_value / _LN10

    def decimal_parts(self) -> tuple[float, int]:
        """(mantissa in [1, 10), base-10 exponent); (0.0, 0) for zero."""
        if self.ln_value == -math.inf:
            return 0.0, 0
        exponent = math.floor(self.log10)
        mantissa = 10.0 ** (self.log10 - exponent)
        if mantissa >= 10.0:  # guard the floor/round seam
            mantissa /= 10.0
            exponent += 1
        return mantissa, exponent

    def decimal_string(self, digits: int = 3) -> str:
        mantissa, exponent = self.decimal_parts()
        if mantissa == 0.0:
            return "0"
        return f"{mantissa:.{digits - 1}f}e{exponent:+04d}"

    def __le__(self, other: "LogDelta") -> bool:
        return self.ln_value <= other.ln_value

    def __lt__(self, other: "LogDelta") -> bool:
        return self.ln_value < other.ln_value

    @classmethod
    def zero(cls) -> "LogDelta":
        return cls(-math.inf)

    @classmethod
    def from_float(cls, value: float) -> "LogDelta":
        if value < 0:
            raise ValueError("distances are non-negative")
        return cls(math.log(value)) if value > 0 else cls.zero()


def stat_distance_exact(q: float, n_bits: int) -> LogDelta:
    """Exact distance (0.5 + q)^N - 0.5^N, evaluated in log space.

    Written as 0.5^N * (exp(N*log1p(2q)) - 1) so it stays exact to double
    precision for any N up to 1e6 and q arbitrarily close to (but below) 0.5.
    """
    if not 0.0 <= q < 0.5:
        raise ValueError("q must satisfy 0 <= q < 0.5")
    if n_bits < 1:
        raise ValueError("need at least one key bit")
    if q == 0.0:
        return LogDelta.zero()
    growth = n_bits * math.log1p(2.0 * q)
    if growth > 700.0:
        ln_expm1 = growth  # exp(growth) - 1 is exp(growth) to 300+ digits
    else:
        ln_expm1 = math.log(math.expm1(growth))
    return LogDelta(n_bits * math.log(0.5) + ln_expm1)


def stat_distance_linear(q: float, n_bits: int) -> LogDelta:
    """Small-q linearization 2*N*q*0.5^N in log space.

    Only meaningful for N*q well below 0.5; callers should treat N*q >= 0.1
    as out of the linear regime (see SecurityReport.linear_regime).
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    if n_bits < 1:
        raise ValueError("need at least one key bit")
    if q == 0.0:
        return LogDelta.zero()
    return LogDelta(
        math.log(2.0 * n_bits * q) + n_bits * math.log(0.5)
    )


def required_q(epsilon: float, n_bits: int) -> float:
    """Largest per-bit advantage compatible with distance <= epsilon.

    Inverts the linearized distance: q <= (epsilon / 2N) * 2^N, clipped at
    the trivial ceiling 0.5.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if n_bits < 1:
        raise ValueError("need at least one key bit")
    ln_q = math.log(epsilon) - math.log(2.0 * n_bits) + n_bits * math.log(2.0)
    if ln_q >= math.log(0.5):
        return 0.5
    return math.exp(ln_q)


def pa_advantage_map(q: float, rounds: int) -> float:
    """Per-bit advantage after XOR-pairing privacy amplification rounds.

    Each round maps p to p^2 + (1-p)^2, i.e. q to 2q^2; q = 0 and q = 0.5
    are the fixed points.
    """
    if not 0.0 <= q <= 0.5:
        raise ValueError("q must lie in [0, 0.5]")
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    for _ in range(rounds):
        q = 2.0 * q * q
    return q


def peak_key_length(q: float) -> int:
    """Key length maximizing the exact distance at fixed q > 0.

    The distance rises with N while p^N dominates, then decays; the integer
    maximizer of N -> (0.5+q)^N - 0.5^N is returned.
    """
    if not 0.0 < q < 0.5:
        raise ValueError("q must satisfy 0 < q < 0.5")
    p = 0.5 + q
    # stationary point of the continuous relaxation
    n_star = math.log(math.log(0.5) / math.log(p)) / math.log(2.0 * p)
    candidates = {max(1, math.floor(n_star)), max(1, math.ceil(n_star))}
    return max(
        candidates,
        key=lambda n: stat_distance_exact(q, n).ln_value,
    )


@dataclass(frozen=True)
class SecurityReport:
    """Distance figures for one (q, N) pair against a target epsilon."""

    n_bits: int
    q: float
    delta_exact: LogDelta
    delta_linear: LogDelta
    epsilon_target: float
    satisfied: bool
    linear_regime: bool  # N*q < 0.1

    @classmethod
    def evaluate(cls, q: float, n_bits: int, epsilon: float) -> "SecurityReport":
        exact = stat_distance_exact(q, n_bits)
        lin = stat_distance_linear(q, n_bits)
        eps = LogDelta.from_float(epsilon)
        return cls(
            n_bits=n_bits,
            q=q,
            delta_exact=exact,
            delta_linear=lin,
            epsilon_target=epsilon,
            satisfied=exact <= eps,
            linear_regime=n_bits * q < 0.1,
        )


# -- binomial scoring ------------------------------------------------------


def wilson_interval(successes: int, n: int) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if n <= 0:
        raise ValueError("need at least one trial")
    if not 0 <= successes <= n:
        raise ValueError("successes must lie in [0, n]")
    p_hat = successes / n
    z2 = _Z95 * _Z95
    denom = 1.0 + z2 / n
    center = (p_hat + z2 / (2 * n)) / denom
    half = (
        _Z95
        * math.sqrt(p_hat * (1 - p_hat) / n + z2 / (4 * n * n))
        / denom
    )
    return center - half, center + half


@dataclass(frozen=True)
class QEstimate:
    """Estimated per-bit advantage with its 95% confidence interval."""

    p_hat: float
    q_hat: float
    ci_low: float
    ci_high: float
    n: int

    def __post_init__(self):
        if not 0.0 <= self.p_hat <= 1.0:
            raise ValueError("p_hat must lie in [0, 1]")
        if abs(self.q_hat - (self.p_hat - 0.5)) > 1e-12:
            raise ValueError("q_hat must equal p_hat - 0.5")

    @classmethod
    def from_counts(cls, successes: int, n: int) -> "QEstimate":
        low, high = wilson_interval(successes, n)
        p_hat = successes / n
        return cls(p_hat, p_hat - 0.5, low - 0.5, high - 0.5, n)

    @property
    def half_width(self) -> float:
        return (self.ci_high - self.ci_low) / 2.0

    def ci_contains_chance(self) -> bool:
        return self.ci_low <= 0.0 <= self.ci_high

    def ci_excludes_chance(self) -> bool:
        return self.ci_low > 0.0 or self.ci_high < 0.0


@dataclass(frozen=True)
class ScalingFit:
    """Weighted through-origin power-law fit q = theta * x**exponent."""

    exponent: float
    coefficient: float
    r_squared: float
    intercept: float
    intercept_se: float

    def intercept_ci_contains_zero(self) -> bool:
        return abs(self.intercept) <= _Z95 * self.intercept_se


def fit_scaling(
    sweep: list[tuple[float, QEstimate]], exponent: float = 1.0
) -> ScalingFit:
    """Fit measured advantages against a resource raised to `exponent`.

    The through-origin slope is the reported coefficient; a free-intercept
    refit supplies the intercept and its standard error as the
    goes-through-zero diagnostic.  Points are weighted by their confidence
    interval half-widths.
    """
    if len(sweep) < 4:
        raise ValueError("need at least four sweep points")
    x = np.array([float(v) ** exponent for v, _ in sweep])
    y = np.array([est.q_hat for _, est in sweep])
    se = np.array([max(est.half_width / _Z95, 1e-12) for _, est in sweep])
    if np.ptp(x) == 0:
        raise ValueError("degenerate sweep: all resource values equal")
    w = 1.0 / se**2
    theta = float(np.sum(w * x * y) / np.sum(w * x * x))
    resid = y - theta * x
    ss_res = float(np.sum(w * resid**2))
    y_bar = float(np.sum(w * y) / np.sum(w))
    ss_tot = float(np.sum(w * (y - y_bar) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 0.0

    # free-intercept weighted refit for the origin diagnostic
    sw = np.sum(w)
    sx = np.sum(w * x)
    sxx = np.sum(w * x * x)
    sy = np.sum(w * y)
    sxy = np.sum(w * x * y)
    det = sw * sxx - sx * sx
    intercept = float((sxx * sy - sx * sxy) / det)
    intercept_se = float(np.sqrt(sxx / det))
    return ScalingFit(exponent, theta, r_squared, intercept, intercept_se)
