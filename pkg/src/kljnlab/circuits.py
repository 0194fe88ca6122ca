"""Lumped solutions of the two-resistor noise loop and analytic channel levels.

The loop is a single Kirchhoff mesh: Alice's source U_A behind R_A, an ideal
(or resistive) wire, and Bob's source U_B behind R_B.  With matched effective
temperatures the channel voltage and current are uncorrelated, so no passive
measurement reveals which end holds the larger resistor; the analytic
mean-square levels below are what honest parties compare their measurements
against.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .noise import (
    BOLTZMANN,
    NoiseSpec,
    RngStream,
    SampleTrace,
    generate_noise,
    johnson_spectral_density,
)

#: maximum wire resistance fraction of the loop resistance for a "practical" loop
PRACTICAL_WIRE_FRACTION = 0.02


@dataclass(frozen=True)
class LoopConfig:
    """Parameters of one key-exchange loop instance.

    r_a / r_b are the currently connected resistors and must come from the
    public pair {r_low, r_high}.  r_wire lumps the series wire resistance at
    the wire midpoint, with its own Johnson source at t_wire.
    """

    r_a: float
    r_b: float
    r_low: float
    r_high: float
    t_eff: float
    bandwidth: float
    r_wire: float = 0.0
    t_wire: float = 0.0
    practical: bool = False

    def __post_init__(self):
        if not 0 < self.r_low < self.r_high:
            raise ValueError("need 0 < r_low < r_high")
        for r in (self.r_a, self.r_b):
            if r not in (self.r_low, self.r_high):
                raise ValueError("connected resistors must be r_low or r_high")
        if self.r_wire < 0 or self.t_wire < 0:
            raise ValueError("wire resistance and temperature must be >= 0")
        if self.t_eff < 0 or self.bandwidth <= 0:
            raise ValueError("t_eff must be >= 0 and bandwidth > 0")
        if self.practical and self.r_wire > PRACTICAL_WIRE_FRACTION * (
            self.r_low + self.r_high
        ):
            raise ValueError(
                "practical loop requires r_wire <= 2% of (r_low + r_high)"
            )

    @property
    def injection_split(self) -> float:
        """Current-divider fraction gamma = r_b / (r_a + r_b).

        A current injected at the wire splits with gamma flowing toward
        Alice; gamma is always derived from the resistors, never free.
        """
        return self.r_b / (self.r_a + self.r_b)

    def with_bits(self, alice_bit: str, bob_bit: str) -> "LoopConfig":
        pick = {"L": self.r_low, "H": self.r_high}
        return replace(self, r_a=pick[alice_bit], r_b=pick[bob_bit])


@dataclass
class ChannelTrace:
    """Wire observables of one bit-exchange period.

    With an ideal wire and no injected current the per-end traces are the
    same objects as u_c / i_c; they only split under wire resistance
    (voltages) or current injection (currents).
    """

    u_c: SampleTrace
    i_c: SampleTrace
    u_end_a: SampleTrace
    u_end_b: SampleTrace
    i_end_a: SampleTrace
    i_end_b: SampleTrace

    def __post_init__(self):
        traces = [self.u_c, self.i_c, self.u_end_a, self.u_end_b,
                  self.i_end_a, self.i_end_b]
        n = len(traces[0])
        dt = traces[0].dt
        for t in traces:
            if len(t) != n or t.dt != dt:
                raise ValueError("channel traces must share dt and length")

    @property
    def dt(self) -> float:
        return self.u_c.dt


@dataclass(frozen=True)
class LevelTable:
    """Analytic mean-square channel levels for the three joint bit states."""

    ms_u_ll: float
    ms_u_lh: float
    ms_u_hh: float
    ms_i_ll: float
    ms_i_lh: float
    ms_i_hh: float

    def __post_init__(self):
        if not self.ms_u_ll < self.ms_u_lh < self.ms_u_hh:
            raise ValueError("voltage levels must be ordered LL < LH < HH")
        if not self.ms_i_hh < self.ms_i_lh < self.ms_i_ll:
            raise ValueError("current levels must be ordered HH < LH < LL")

    @property
    def u_levels(self) -> np.ndarray:
        """Voltage levels in class order (LL, mid, HH)."""
        return np.array([self.ms_u_ll, self.ms_u_lh, self.ms_u_hh])

    @property
    def i_levels(self) -> np.ndarray:
        """Current levels in class order (LL, mid, HH)."""
        return np.array([self.ms_i_ll, self.ms_i_lh, self.ms_i_hh])


def analytic_levels(
    r_low: float, r_high: float, t_eff: float, bandwidth: float
) -> LevelTable:
    """Mean-square voltage/current levels for LL, LH(=HL) and HH states."""
    if not 0 < r_low < r_high:
        raise ValueError("need 0 < r_low < r_high")
    four_ktdf = 4.0 * BOLTZMANN * t_eff * bandwidth
    parallel = r_low * r_high / (r_low + r_high)
    return LevelTable(
        ms_u_ll=four_ktdf * r_low / 2.0,
        ms_u_lh=four_ktdf * parallel,
        ms_u_hh=four_ktdf * r_high / 2.0,
        ms_i_ll=four_ktdf / (2.0 * r_low),
        ms_i_lh=four_ktdf / (r_low + r_high),
        ms_i_hh=four_ktdf / (2.0 * r_high),
    )


def directional_powers(
    r_low: float, r_high: float, t_eff: float, bandwidth: float
) -> tuple[float, float]:
    """Power heating each resistor from the other's source; always equal.

    The equality of the two directions is the thermal-equilibrium null that
    denies an eavesdropper any directional information in the ideal loop.
    """
    if not 0 < r_low < r_high:
        raise ValueError("need 0 < r_low < r_high")
    p = (
        4.0
        * BOLTZMANN
        * t_eff
        * r_low
        * r_high
        / (r_low + r_high) ** 2
        * bandwidth
    )
    return p, p


def _check_pair(u_a: SampleTrace, u_b: SampleTrace):
    if len(u_a) != len(u_b) or u_a.dt != u_b.dt:
        raise ValueError("source traces must share dt and length")


def solve_ideal_loop(
    u_a: SampleTrace, u_b: SampleTrace, r_a: float, r_b: float
) -> ChannelTrace:
    """Samplewise mesh solution of the ideal (zero wire resistance) loop."""
    _check_pair(u_a, u_b)
    if r_a + r_b <= 0:
        raise ValueError("loop resistance must be positive")
    total = r_a + r_b
    i_c = SampleTrace((u_a.samples - u_b.samples) / total, u_a.dt)
    u_c = SampleTrace(
        (u_a.samples * r_b + u_b.samples * r_a) / total, u_a.dt
    )
    return ChannelTrace(u_c, i_c, u_c, u_c, i_c, i_c)


def wire_loop_arrays(
    u_a: np.ndarray,
    u_b: np.ndarray,
    u_w: np.ndarray | float,
    r_a: float,
    r_b: float,
    r_wire: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Loop algebra with a lumped midpoint wire resistor and its noise source.

    Returns (i_c, u_c, u_end_a, u_end_b); broadcasts, so matrices of stacked
    bit-exchange periods solve in one call.  u_c is taken at the wire
    midpoint, between the two r_wire/2 halves.
    """
    total = r_a + r_b + r_wire
    i_c = (u_a - u_b - u_w) / total
    u_end_a = u_a - i_c * r_a
    u_end_b = u_b + i_c * r_b
    # midpoint sits after half the wire drop and half its noise source
    u_c = u_end_a - i_c * (r_wire / 2.0) - u_w / 2.0
    return i_c, u_c, u_end_a, u_end_b


def solve_loop_with_wire(
    u_a: SampleTrace,
    u_b: SampleTrace,
    r_a: float,
    r_b: float,
    r_wire: float,
    t_wire: float = 0.0,
    wire_noise: SampleTrace | None = None,
    bandwidth: float | None = None,
    rng: RngStream | None = None,
) -> ChannelTrace:
    """Loop solution with series wire resistance and its Johnson noise.

    The wire contributes a single source of density 4*k*t_wire*r_wire lumped
    at the midpoint.  Pass a pre-synthesized wire_noise trace, or a bandwidth
    and rng from which one is generated; with r_wire == 0 (or t_wire == 0 and
    no trace) this reduces exactly to solve_ideal_loop.
    """
    _check_pair(u_a, u_b)
    if r_wire < 0:
        raise ValueError("r_wire must be >= 0")
    if r_wire == 0.0:
        return solve_ideal_loop(u_a, u_b, r_a, r_b)
    if wire_noise is None:
        density = johnson_spectral_density(t_wire, r_wire)
        if density > 0.0:
            if bandwidth is None or rng is None:
                raise ValueError(
                    "t_wire > 0 needs either wire_noise or (bandwidth, rng)"
                )
            spec = NoiseSpec(
                density, bandwidth, 1.0 / u_a.dt, len(u_a) * u_a.dt
            )
            wire_noise = generate_noise(spec, rng)
        else:
            wire_noise = SampleTrace(np.zeros(len(u_a)), u_a.dt)
    _check_pair(u_a, wire_noise)
    i_c, u_c, u_end_a, u_end_b = wire_loop_arrays(
        u_a.samples, u_b.samples, wire_noise.samples, r_a, r_b, r_wire
    )
    dt = u_a.dt
    i_trace = SampleTrace(i_c, dt)
    return ChannelTrace(
        SampleTrace(u_c, dt),
        i_trace,
        SampleTrace(u_end_a, dt),
        SampleTrace(u_end_b, dt),
        i_trace,
        i_trace,
    )


def inject_current(
    trace: ChannelTrace, i_e: SampleTrace, r_a: float, r_b: float
) -> ChannelTrace:
    """Superpose an externally injected midpoint current onto the loop.

    The injected current divides by the resistances seen in each direction:
    gamma = r_b / (r_a + r_b) flows toward Alice, the rest toward Bob, so
    i_end_b - i_end_a equals the injected current samplewise.  Voltages rise
    by i_e times the parallel resistance.
    """
    gamma = r_b / (r_a + r_b)
    if not 0.0 < gamma < 1.0:
        raise ValueError("degenerate current split; need finite r_a and r_b")
    if len(i_e) != len(trace.u_c) or i_e.dt != trace.dt:
        raise ValueError("injected trace must match the channel traces")
    dt = trace.dt
    parallel = r_a * r_b / (r_a + r_b)
    du = i_e.samples * parallel
    return ChannelTrace(
        SampleTrace(trace.u_c.samples + du, dt),
        trace.i_c,
        SampleTrace(trace.u_end_a.samples + du, dt),
        SampleTrace(trace.u_end_b.samples + du, dt),
        SampleTrace(trace.i_end_a.samples - gamma * i_e.samples, dt),
        SampleTrace(trace.i_end_b.samples + (1.0 - gamma) * i_e.samples, dt),
    )


def quasi_static_margin(
    line_length: float, phase_velocity: float, bandwidth: float
) -> float:
    """Ratio of the noise bandwidth to the lowest wave frequency c/(2L).

    Values much below one mean no wave modes fit on the wire and the lumped
    (quasi-static) treatment is valid; a ratio of one is the wave limit.
    """
    if line_length <= 0 or phase_velocity <= 0 or bandwidth <= 0:
        raise ValueError("all inputs must be positive")
    f_min_wave = phase_velocity / (2.0 * line_length)
    return bandwidth / f_min_wave
