"""Bit-exchange execution for the noise loop and the battery/switch scheme.

One bit-exchange period (BEP) gives each party a random resistor (or switch
position), runs the physics for a fixed duration, and classifies the wire's
mean-square level against the analytic table.  Only the intermediate level,
where the parties hold complementary bits, is kept for the key; equal-bit
periods are discarded, and classification mistakes on short periods are what
the bit-error-rate study measures.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import IntEnum

import numpy as np

from .circuits import (
    ChannelTrace,
    LevelTable,
    LoopConfig,
    analytic_levels,
    wire_loop_arrays,
)
from .line import (
    LineModel,
    LineRecording,
    LineSimulator,
    Termination,
    raised_cosine_ramp,
)
from .noise import (
    BOLTZMANN,
    NoiseSpec,
    RngStream,
    SampleTrace,
    generate_noise_matrix,
    johnson_spectral_density,
)

# stream roles, so every independent noise source owns a derived substream
ROLE_BITS = 0
ROLE_ALICE = 1
ROLE_BOB = 2
ROLE_WIRE = 3
ROLE_EVE = 4
ROLE_COIN = 5
ROLE_WALK_A = 6
ROLE_WALK_B = 7
ROLE_PORT_A = 8
ROLE_PORT_B = 9
ROLE_SEGMENTS = 10

BIT_NAMES = ("L", "H")


class Classification(IntEnum):
    LL_LEVEL = 0
    MID_LEVEL = 1
    HH_LEVEL = 2
    ABORT = 3


@dataclass(frozen=True)
class DefenseConfig:
    """Defensive measures the communicating parties apply per BEP."""

    comparison_resolution_bits: int = 14
    leak_cap: float | None = None
    transient_mode: str = "none"  # "none" or "random_walk"
    compare_endpoints: bool = False

    def __post_init__(self):
        if self.comparison_resolution_bits < 1:
            raise ValueError("need at least one bit of comparison resolution")
        if self.transient_mode not in ("none", "random_walk"):
            raise ValueError("transient_mode must be 'none' or 'random_walk'")


@dataclass(frozen=True)
class RandomWalkConfig:
    """Adiabatic resistance random walk executed before measurement."""

    v_rms: float  # RMS resistance speed, ohm/s
    t_r: float    # public deadline for reaching the target resistance, s
    walk_dt: float

    def __post_init__(self):
        if self.v_rms <= 0 or self.t_r <= 0 or self.walk_dt <= 0:
            raise ValueError("walk parameters must be positive")
        if self.walk_dt > self.t_r:
            raise ValueError("walk_dt cannot exceed the walk deadline")


@dataclass
class BepRecord:
    """Outcome of a single bit-exchange period."""

    index: int
    alice_bit: str
    bob_bit: str
    classification: Classification
    kept: bool
    alice_inferred_bob: str | None
    bob_inferred_alice: str | None
    error: bool
    leak_statistic: float = 0.0
    ms_u_hat: float = 0.0
    ms_i_hat: float = 0.0

    def __post_init__(self):
        if self.kept and self.classification is not Classification.MID_LEVEL:
            raise ValueError("only intermediate-level periods can be kept")


@dataclass(frozen=True)
class Key:
    """Shared key bits with the provenance needed to reproduce them."""

    bits: tuple[int, ...]
    provenance: tuple

    def __len__(self) -> int:
        return len(self.bits)


def _complement(bit: str) -> str:
    return "H" if bit == "L" else "L"


def classify_levels(
    ms_u_hat: float, ms_i_hat: float, table: LevelTable
) -> Classification:
    """Nearest-level vote in the log domain, voltage and current separately.

    The two votes must agree, otherwise the period is aborted (the combined
    voltage/current mitigation).  Ties resolve to the lower class, fixed for
    reproducibility.
    """
    codes = classify_levels_array(
        np.atleast_1d(float(ms_u_hat)), np.atleast_1d(float(ms_i_hat)), table
    )
    return Classification(int(codes[0]))


def classify_levels_array(
    ms_u: np.ndarray, ms_i: np.ndarray, table: LevelTable
) -> np.ndarray:
    """Vectorized classify_levels over stacked periods."""
    ms_u = np.asarray(ms_u, dtype=float)
    ms_i = np.asarray(ms_i, dtype=float)
    out = np.full(ms_u.shape, int(Classification.ABORT), dtype=np.int8)
    valid = (ms_u > 0) & (ms_i > 0)
    if np.any(valid):
        log_u = np.log(ms_u[valid])[:, None]
        log_i = np.log(ms_i[valid])[:, None]
        # argmin takes the first minimum, i.e. the lower class on a tie
        vote_u = np.argmin(np.abs(log_u - np.log(table.u_levels)[None, :]), axis=1)
        vote_i = np.argmin(np.abs(log_i - np.log(table.i_levels)[None, :]), axis=1)
        agreed = np.where(vote_u == vote_i, vote_u, int(Classification.ABORT))
        out[valid] = agreed.astype(np.int8)
    return out


# ---------------------------------------------------------------------------
# KLJN sessions
# ---------------------------------------------------------------------------


@dataclass
class KljnBepBatch:
    """Stacked per-period wire observables for one chunk of a session.

    Row k holds the sampled traces of period `start_index + k`.  Attack
    statistics consume these matrices and drop them, so memory stays bounded
    for large campaigns.
    """

    start_index: int
    dt: float
    bandwidth: float
    oversample: int
    bits_a: np.ndarray  # uint8, 0 = L, 1 = H
    bits_b: np.ndarray
    u_c: np.ndarray
    i_c: np.ndarray
    u_end_a: np.ndarray
    u_end_b: np.ndarray
    i_end_a: np.ndarray
    i_end_b: np.ndarray
    i_e: np.ndarray | None = None
    source_part_a: np.ndarray | None = None  # per-source channel contributions
    source_part_b: np.ndarray | None = None
    r_path_a: np.ndarray | None = None  # resistance paths on the sample grid
    r_path_b: np.ndarray | None = None
    walk_samples: int = 0  # leading samples covered by the resistance walk
    walk_arrived: np.ndarray | None = None

    @property
    def count(self) -> int:
        return self.bits_a.size

    def channel_trace(self, row: int) -> ChannelTrace:
        dt = self.dt
        return ChannelTrace(
            SampleTrace(self.u_c[row], dt),
            SampleTrace(self.i_c[row], dt),
            SampleTrace(self.u_end_a[row], dt),
            SampleTrace(self.u_end_b[row], dt),
            SampleTrace(self.i_end_a[row], dt),
            SampleTrace(self.i_end_b[row], dt),
        )


@dataclass
class SessionColumns:
    """Columnar per-period outcomes of a session."""

    alice_bits: np.ndarray
    bob_bits: np.ndarray
    classification: np.ndarray
    kept: np.ndarray
    error: np.ndarray
    defense_discard: np.ndarray
    leak_raw: np.ndarray
    ms_u: np.ndarray
    ms_i: np.ndarray

    @property
    def n_beps(self) -> int:
        return self.alice_bits.size

    def leak_statistic(self) -> np.ndarray:
        """End-voltage asymmetry normalized by its session standard deviation."""
        scale = float(np.std(self.leak_raw))
        if scale == 0.0:
            return np.zeros_like(self.leak_raw)
        return np.abs(self.leak_raw) / scale

    def records(self, start_index: int = 0) -> list[BepRecord]:
        leak = self.leak_statistic()
        out = []
        for k in range(self.n_beps):
            a = BIT_NAMES[self.alice_bits[k]]
            b = BIT_NAMES[self.bob_bits[k]]
            kept = bool(self.kept[k])
            out.append(
                BepRecord(
                    index=start_index + k,
                    alice_bit=a,
                    bob_bit=b,
                    classification=Classification(int(self.classification[k])),
                    kept=kept,
                    alice_inferred_bob=_complement(a) if kept else None,
                    bob_inferred_alice=_complement(b) if kept else None,
                    error=bool(self.error[k]),
                    leak_statistic=float(leak[k]),
                    ms_u_hat=float(self.ms_u[k]),
                    ms_i_hat=float(self.ms_i[k]),
                )
            )
        return out

    def key(self, session_seed: int) -> Key:
        good = self.kept & ~self.error
        indices = np.nonzero(good)[0]
        bits = tuple(int(b) for b in self.alice_bits[indices])
        return Key(bits, (session_seed, tuple(int(i) for i in indices)))

    def true_hl(self) -> np.ndarray:
        """Ground-truth 'Alice holds the high resistor' flags."""
        return (self.alice_bits == 1) & (self.bob_bits == 0)


def _draw_bits(rng: RngStream, count: int) -> tuple[np.ndarray, np.ndarray]:
    gen = rng.child(ROLE_BITS).generator()
    bits = gen.integers(0, 2, size=(count, 2), dtype=np.uint8)
    return bits[:, 0], bits[:, 1]


def _walk_paths(
    count: int,
    r_low: float,
    r_high: float,
    goes_high: np.ndarray,
    walk: RandomWalkConfig,
    rng: RngStream,
) -> tuple[np.ndarray, np.ndarray]:
    """Reflected Gaussian walks from the midpoint, absorbed at the target.

    Rows freeze at the target resistance after first passage; the non-target
    boundary reflects.  Returns (paths on the walk grid, arrived flags).
    """
    n_steps = int(round(walk.t_r / walk.walk_dt))
    mid = 0.5 * (r_low + r_high)
    step_rms = walk.v_rms * walk.walk_dt
    gen = rng.generator()
    paths = np.empty((count, n_steps + 1))
    paths[:, 0] = mid
    pos = np.full(count, mid)
    arrived = np.zeros(count, dtype=bool)
    target = np.where(goes_high, r_high, r_low)
    for k in range(1, n_steps + 1):
        step = gen.standard_normal(count) * step_rms
        pos = np.where(arrived, pos, pos + step)
        low_reflect = ~goes_high & (pos > r_high)
        pos[low_reflect] = 2 * r_high - pos[low_reflect]
        high_reflect = goes_high & (pos < r_low)
        pos[high_reflect] = 2 * r_low - pos[high_reflect]
        hit = ~arrived & np.where(goes_high, pos >= r_high, pos <= r_low)
        arrived |= hit
        pos = np.where(arrived, target, pos)
        np.clip(pos, r_low, r_high, out=pos)
        paths[:, k] = pos
    return paths, arrived


def run_kljn_batch(
    config: LoopConfig,
    tau: float,
    count: int,
    rng: RngStream,
    oversample: int = 10,
    forced_bits: tuple[str, str] | None = None,
    injection_sigma: float = 0.0,
    track_sources: bool = False,
    walk: RandomWalkConfig | None = None,
    start_index: int = 0,
) -> tuple[KljnBepBatch, SessionColumns]:
    """Simulate `count` periods in one vectorized pass.

    Bits are drawn uniformly (or forced), the two sources synthesized at the
    loop's effective temperature, the mesh solved samplewise, and each period
    classified against the analytic level table.  Optional features: series
    wire resistance with its own Johnson source (config.r_wire), an injected
    eavesdropper current of relative RMS `injection_sigma`, retained
    per-source channel contributions for the coupler attack, and the
    adiabatic resistance random walk.
    """
    if tau * 2 * config.bandwidth < 4:
        raise ValueError("need tau * 2 * bandwidth >= 4 to classify")
    fs = oversample * 2.0 * config.bandwidth
    n = int(round(tau * fs))
    dt = 1.0 / fs

    if forced_bits is None:
        bits_a, bits_b = _draw_bits(rng, count)
    else:
        a, b = forced_bits
        bits_a = np.full(count, BIT_NAMES.index(a), dtype=np.uint8)
        bits_b = np.full(count, BIT_NAMES.index(b), dtype=np.uint8)

    resistors = np.array([config.r_low, config.r_high])
    four_kt = 4.0 * BOLTZMANN * config.t_eff

    unit_spec = NoiseSpec(1.0, config.bandwidth, fs, tau)
    noise_a = generate_noise_matrix(unit_spec, rng.child(ROLE_ALICE), count)
    noise_b = generate_noise_matrix(unit_spec, rng.child(ROLE_BOB), count)

    walk_samples = 0
    walk_arrived = None
    r_path_a = r_path_b = None
    if walk is None:
        r_a = resistors[bits_a][:, None]
        r_b = resistors[bits_b][:, None]
    else:
        # resistances walk from the common midpoint toward the bit targets,
        # the noise densities rescaled in lockstep to hold t_eff constant
        paths_a, arr_a = _walk_paths(
            count, config.r_low, config.r_high, bits_a == 1, walk,
            rng.child(ROLE_WALK_A),
        )
        paths_b, arr_b = _walk_paths(
            count, config.r_low, config.r_high, bits_b == 1, walk,
            rng.child(ROLE_WALK_B),
        )
        per_step = max(1, int(round(walk.walk_dt * fs)))
        walk_samples = paths_a.shape[1] * per_step
        if walk_samples >= n:
            raise ValueError("tau must leave measurement time after the walk")
        r_a = np.empty((count, n))
        r_b = np.empty((count, n))
        r_a[:, :walk_samples] = np.repeat(paths_a, per_step, axis=1)
        r_b[:, :walk_samples] = np.repeat(paths_b, per_step, axis=1)
        # after the deadline an arrived party sits at its target; a party
        # that missed it freezes where it stopped (the period aborts anyway)
        r_a[:, walk_samples:] = np.where(arr_a, resistors[bits_a], paths_a[:, -1])[:, None]
        r_b[:, walk_samples:] = np.where(arr_b, resistors[bits_b], paths_b[:, -1])[:, None]
        walk_arrived = arr_a & arr_b
        r_path_a, r_path_b = r_a, r_b

    u_a = noise_a * np.sqrt(four_kt * r_a)
    u_b = noise_b * np.sqrt(four_kt * r_b)

    source_part_a = source_part_b = None
    if config.r_wire > 0:
        wire_density = johnson_spectral_density(config.t_wire, config.r_wire)
        u_w = generate_noise_matrix(unit_spec, rng.child(ROLE_WIRE), count)
        u_w *= math.sqrt(wire_density)
        i_c, u_c, u_end_a, u_end_b = wire_loop_arrays(
            u_a, u_b, u_w, r_a, r_b, config.r_wire
        )
    else:
        total = r_a + r_b
        i_c = (u_a - u_b) / total
        u_c = (u_a * r_b + u_b * r_a) / total
        u_end_a = u_end_b = u_c
        if track_sources:
            source_part_a = u_a * r_b / total
            source_part_b = u_b * r_a / total

    i_end_a = i_end_b = i_c
    i_e = None
    if injection_sigma > 0.0:
        if injection_sigma >= 1.0:
            raise ValueError("injected current must stay below the channel RMS")
        table = analytic_levels(
            config.r_low, config.r_high, config.t_eff, config.bandwidth
        )
        i_rms = math.sqrt(table.ms_i_lh)
        i_e = generate_noise_matrix(unit_spec, rng.child(ROLE_EVE), count)
        # the unit-density matrix carries variance bandwidth * 1.0, so
        # normalize before scaling to the target relative RMS
        i_e *= injection_sigma * i_rms / math.sqrt(config.bandwidth)
        gamma = r_b / (r_a + r_b)
        parallel = r_a * r_b / (r_a + r_b)
        du = i_e * parallel
        u_c = u_c + du
        u_end_a = u_end_a + du
        u_end_b = u_end_b + du
        i_end_a = i_c - gamma * i_e
        i_end_b = i_c + (1.0 - gamma) * i_e

    batch = KljnBepBatch(
        start_index=start_index,
        dt=dt,
        bandwidth=config.bandwidth,
        oversample=oversample,
        bits_a=bits_a,
        bits_b=bits_b,
        u_c=u_c,
        i_c=i_c,
        u_end_a=u_end_a,
        u_end_b=u_end_b,
        i_end_a=i_end_a,
        i_end_b=i_end_b,
        i_e=i_e,
        source_part_a=source_part_a,
        source_part_b=source_part_b,
        r_path_a=r_path_a,
        r_path_b=r_path_b,
        walk_samples=walk_samples,
        walk_arrived=walk_arrived,
    )
    columns = _classify_batch(batch, config, walk)
    return batch, columns


def _classify_batch(
    batch: KljnBepBatch, config: LoopConfig, walk: RandomWalkConfig | None
) -> SessionColumns:
    table = analytic_levels(
        config.r_low, config.r_high, config.t_eff, config.bandwidth
    )
    meas = slice(batch.walk_samples, None)
    ms_u = np.mean(batch.u_c[:, meas] ** 2, axis=1)
    ms_i = np.mean(batch.i_c[:, meas] ** 2, axis=1)
    classification = classify_levels_array(ms_u, ms_i, table)
    if walk is not None and batch.walk_arrived is not None:
        # a missed deadline aborts the period via the cancellation signal
        classification = np.where(
            batch.walk_arrived, classification, int(Classification.ABORT)
        ).astype(np.int8)

    kept = classification == int(Classification.MID_LEVEL)
    defense_discard = np.zeros(batch.count, dtype=bool)
    leak_raw = np.zeros(batch.count)
    if config.r_wire > 0:
        leak_raw = np.mean(batch.u_end_a**2, axis=1) - np.mean(
            batch.u_end_b**2, axis=1
        )
    error = kept & (batch.bits_a == batch.bits_b)
    return SessionColumns(
        alice_bits=batch.bits_a,
        bob_bits=batch.bits_b,
        classification=classification,
        kept=kept,
        error=error,
        defense_discard=defense_discard,
        leak_raw=leak_raw,
        ms_u=ms_u,
        ms_i=ms_i,
    )


def endpoint_comparison_mask(
    i_end_a: np.ndarray,
    i_end_b: np.ndarray,
    resolution_bits: int,
    full_scale: float | None = None,
) -> np.ndarray:
    """True where the end currents differ above the comparison quantum.

    The threshold is one quantization step of a resolution_bits comparator.
    Its full scale is an apparatus constant: the intermediate-level channel
    RMS current the instruments were calibrated for.  When not supplied it
    falls back to the RMS measured on the period itself.
    """
    if full_scale is None:
        mean_current = 0.5 * (i_end_a + i_end_b)
        full_scale = np.sqrt(np.mean(mean_current**2, axis=-1))
    threshold = full_scale * 2.0 ** (-resolution_bits)
    worst = np.max(np.abs(i_end_a - i_end_b), axis=-1)
    return worst > threshold


def defense_full_scale(config: LoopConfig) -> float:
    """Calibrated comparator full scale: the mid-level RMS channel current."""
    table = analytic_levels(
        config.r_low, config.r_high, config.t_eff, config.bandwidth
    )
    return math.sqrt(table.ms_i_lh)


def apply_endpoint_defense(
    columns: SessionColumns,
    batch: KljnBepBatch,
    defense: DefenseConfig,
    full_scale: float | None = None,
) -> None:
    """Vectorized endpoint comparison; updates kept/discard flags in place."""
    discard = endpoint_comparison_mask(
        batch.i_end_a,
        batch.i_end_b,
        defense.comparison_resolution_bits,
        full_scale,
    )
    columns.defense_discard |= discard
    columns.kept &= ~discard
    columns.error &= columns.kept


def endpoint_comparison_defense(
    trace: ChannelTrace,
    defense: DefenseConfig,
    full_scale: float | None = None,
) -> str:
    """Instantaneous end-current comparison; returns 'pass' or 'discard'."""
    discard = endpoint_comparison_mask(
        trace.i_end_a.samples[None, :],
        trace.i_end_b.samples[None, :],
        defense.comparison_resolution_bits,
        full_scale,
    )[0]
    return "discard" if discard else "pass"


def leak_cap_filter(
    records: list[BepRecord], cap: float | None
) -> list[BepRecord]:
    """Drop records whose normalized leak statistic exceeds the cap."""
    if cap is None:
        return list(records)
    if cap < 0:
        raise ValueError("cap must be >= 0 (or None to disable)")
    return [r for r in records if r.leak_statistic <= cap]


def run_kljn_bep(
    config: LoopConfig,
    tau: float,
    defense: DefenseConfig,
    rng: RngStream,
    oversample: int = 10,
    forced_bits: tuple[str, str] | None = None,
) -> tuple[BepRecord, ChannelTrace]:
    """One bit-exchange period on the noise loop.

    Draws both bits uniformly, synthesizes the sources, solves the loop
    (including the wire's own Johnson noise when config.r_wire > 0),
    classifies the measured mean squares and fills in the inferences.
    """
    batch, columns = run_kljn_batch(
        config, tau, 1, rng, oversample=oversample, forced_bits=forced_bits
    )
    if defense.compare_endpoints:
        apply_endpoint_defense(columns, batch, defense)
    record = columns.records()[0]
    return record, batch.channel_trace(0)


def run_random_walk_bep(
    config: LoopConfig,
    walk: RandomWalkConfig,
    tau: float,
    defense: DefenseConfig,
    rng: RngStream,
    oversample: int = 10,
    forced_bits: tuple[str, str] | None = None,
) -> tuple[BepRecord, ChannelTrace, np.ndarray]:
    """One period under the transient-suppressing random-walk protocol.

    Both resistances start from the common midpoint, walk with RMS speed
    walk.v_rms, and must reach their bit targets by walk.t_r or the period
    aborts.  Returns the record, the wire trace (walk plus measurement), and
    the realized resistance paths on the sample grid, stacked (2, n).
    """
    batch, columns = run_kljn_batch(
        config,
        tau,
        1,
        rng,
        oversample=oversample,
        forced_bits=forced_bits,
        walk=walk,
    )
    record = columns.records()[0]
    trace = batch.channel_trace(0)
    paths = np.vstack([batch.r_path_a[0], batch.r_path_b[0]])
    return record, trace, paths


def privacy_amplify(key: Key, rounds: int) -> Key:
    """XOR disjoint bit pairs; each round halves the length.

    The same transformation applied to the true key and to an eavesdropper's
    guess squares the per-bit advantage, which is why two rounds turn
    q = 0.05 into 5e-5.
    """
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    if len(key.bits) < 2**rounds:
        raise ValueError("key too short for the requested rounds")
    bits = xor_pairs(np.array(key.bits, dtype=np.uint8), rounds)
    return Key(
        tuple(int(b) for b in bits),
        key.provenance + (("pa_rounds", rounds),),
    )


def xor_pairs(bits: np.ndarray, rounds: int) -> np.ndarray:
    """The privacy-amplification map on a raw bit array (for re-scoring)."""
    bits = np.asarray(bits, dtype=np.uint8)
    for _ in range(rounds):
        if bits.size % 2:
            bits = bits[:-1]
        bits = bits[0::2] ^ bits[1::2]
    return bits


# ---------------------------------------------------------------------------
# battery/switch (BR) scheme
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BrVariant:
    """Physical flavour of the battery/switch exchanger.

    damping > 0 puts engaged batteries behind that resistor (matched when it
    equals the wave impedance); wire_temperature > 0 adds the distributed
    Johnson sources of a resistive wire.
    """

    damping: float = 0.0
    damping_temperature: float = 0.0
    wire_temperature: float = 0.0


@dataclass
class BrHistory:
    """Spatially resolved wire history of one or more stacked periods."""

    recording: LineRecording
    u0: float
    tau: float
    t_ramp: float
    charge_window: slice
    hold1_window: slice
    hold2_window: slice
    noise_bandwidth: float | None = None

    @property
    def dt(self) -> float:
        return self.recording.dt

    def states(self):
        return self.recording.states()


def _br_termination(position: str, u0: float, variant: BrVariant) -> Termination:
    """Switch semantics: H = battery to ground, L = open, I = grounded."""
    if position == "H":
        if variant.damping > 0:
            return Termination.battery_damped(u0, variant.damping)
        return Termination.battery(u0)
    if position == "L":
        return Termination.open()
    if position == "I":
        return Termination.grounded()
    raise ValueError(f"unknown switch position {position!r}")


def _br_port_voltage(
    times: np.ndarray,
    engaged: bool,
    window: tuple[float, float],
    u0: float,
    t_ramp: float,
) -> np.ndarray:
    """Battery command: raised-cosine up after window start, down before end.

    Ramping to zero before every switch change means positions only ever
    change on a dead wire, so equal-bit periods really do show a
    zero-voltage half and no switching transient is ever launched.
    """
    if not engaged:
        return np.zeros_like(times)
    start, stop = window
    up = raised_cosine_ramp(times, start, t_ramp, 0.0, u0)
    down = raised_cosine_ramp(times, stop - t_ramp, t_ramp, 0.0, u0)
    return up - down


def br_timestep(model: LineModel) -> float:
    if model.series_l > 0:
        return 0.5 * math.sqrt(model.series_l * model.shunt_c)
    return 0.5 * model.series_r * model.shunt_c


def br_default_ramp(model: LineModel) -> float:
    """Charge-up envelope long enough to keep the drive quasi-static."""
    if model.series_l > 0:
        return 4.0 * model.round_trip_time
    # RC wire: a few slowest relaxation times of the end-driven ladder
    r_tot = model.series_r * model.n_segments
    c_tot = model.shunt_c * model.n_segments
    return 1.6 * r_tot * c_tot


def run_br_group(
    model: LineModel,
    u0: float,
    tau: float,
    bits: tuple[str, str],
    variant: BrVariant,
    rng: RngStream,
    count: int = 1,
    t_ramp: float | None = None,
    record_every: int = 1,
    noise_bandwidth: float | None = None,
    settle_margin: float = 0.0,
    hold_settle: float | None = None,
) -> BrHistory:
    """Run `count` periods that share one switch pattern, stacked in a batch.

    A period is two halves: positions (a, b), then both inverted at tau/2.
    Engaged batteries ramp up after each boundary and back down before the
    next.  Port and distributed Johnson noise are synthesized when the
    variant calls for them; independent periods live in the batch axis.
    """
    a_bit, b_bit = bits
    if a_bit not in "LH" or b_bit not in "LH":
        raise ValueError("switch positions must be L or H during a period")
    dt = br_timestep(model)
    if t_ramp is None:
        t_ramp = br_default_ramp(model)
    if tau / 2.0 < 2.5 * t_ramp:
        raise ValueError("tau too short for quasi-static envelopes")

    # quantize the half-period onto the recording grid
    n_half = int(math.ceil(tau / 2.0 / dt))
    n_half += (-n_half) % max(1, record_every)
    half = n_half * dt
    tau = 2.0 * half
    steps = 2 * n_half
    times = np.arange(steps + 1) * dt

    flip = {"L": "H", "H": "L"}
    halves = [
        (a_bit, b_bit, (0.0, half)),
        (flip[a_bit], flip[b_bit], (half, 2 * half)),
    ]

    port_u = np.zeros((steps + 1, 2))
    engage = np.zeros((steps + 1, 2))  # soft on/off envelope of each switch
    for pa, pb, window in halves:
        for port, pos in ((0, pa), (1, pb)):
            port_u[:, port] += _br_port_voltage(
                times, pos == "H", window, u0, t_ramp
            )
            engage[:, port] += _br_port_voltage(
                times, pos == "H", window, 1.0, t_ramp
            )

    drive = np.repeat(port_u[:, :, None], count, axis=2)
    if variant.damping > 0 and variant.damping_temperature > 0:
        if noise_bandwidth is None:
            noise_bandwidth = 0.3 / model.round_trip_time
        density = johnson_spectral_density(
            variant.damping_temperature, variant.damping
        )
        spec = NoiseSpec(density, noise_bandwidth, 1.0 / dt, (steps + 1) * dt)
        for port, role in ((0, ROLE_PORT_A), (1, ROLE_PORT_B)):
            noise = generate_noise_matrix(spec, rng.child(role), count)
            # the resistor connects with the switch: enveloping its noise on
            # the same raised cosine avoids a broadband turn-on transient
            drive[:, port, :] += noise[:, : steps + 1].T * engage[:, port, None]

    branch_noise = variant.wire_temperature > 0 and model.series_r > 0
    if branch_noise:
        if noise_bandwidth is None:
            noise_bandwidth = 0.05 / dt
        density = johnson_spectral_density(
            variant.wire_temperature, model.series_r
        )
        spec = NoiseSpec(density, noise_bandwidth, 1.0 / dt, (steps + 1) * dt)
        flat = generate_noise_matrix(
            spec, rng.child(ROLE_SEGMENTS), count * model.n_segments
        )
        seg_noise = flat[:, : steps + 1].reshape(
            count, model.n_segments, steps + 1
        ).transpose(2, 1, 0)
        drive = np.concatenate([drive, seg_noise], axis=1)

    state = None
    recordings = []
    for idx, (pa, pb, _window) in enumerate(halves):
        phase_model = replace(
            model,
            term_a=_br_termination(pa, u0, variant),
            term_b=_br_termination(pb, u0, variant),
            damping_temperature=variant.damping_temperature,
        )
        sim = LineSimulator(phase_model, dt, branch_noise=branch_noise)
        if state is None:
            x = np.zeros((sim.n_dynamic + model.n_segments, count))
        else:
            x = sim.pack_arrays(*state)
        lo = 0 if idx == 0 else n_half
        hi = n_half if idx == 0 else steps
        u_seq = drive[lo : hi + 1]
        x, rec = sim.run(x, u_seq, record_every=record_every)
        state = (sim.node_voltage_matrix(x, u_seq[-1]), x[sim.n_dynamic:])
        recordings.append(rec)

    voltages = np.concatenate(
        [recordings[0].voltages, recordings[1].voltages[1:]], axis=0
    )
    currents = np.concatenate(
        [recordings[0].currents, recordings[1].currents[1:]], axis=0
    )
    rec = LineRecording(voltages, currents, dt * record_every)

    rate = rec.dt
    charge_hi = min((t_ramp + settle_margin) / rate, n_half / record_every)
    # steady windows run from after the up-ramp (plus a settling allowance,
    # stretched when residual transients must die under the noise floor)
    if hold_settle is None:
        hold_settle = 0.2 * t_ramp
    if half - t_ramp <= t_ramp + hold_settle:
        raise ValueError("hold_settle leaves no steady window")
    hold1 = slice(
        int(round((t_ramp + hold_settle) / rate)),
        int(round((half - t_ramp) / rate)),
    )
    hold2 = slice(
        int(round((half + t_ramp + hold_settle) / rate)),
        int(round((tau - t_ramp) / rate)),
    )
    return BrHistory(
        recording=rec,
        u0=u0,
        tau=tau,
        t_ramp=t_ramp,
        charge_window=slice(0, max(2, int(round(charge_hi)))),
        hold1_window=hold1,
        hold2_window=hold2,
        noise_bandwidth=noise_bandwidth,
    )


def classify_br(history: BrHistory) -> tuple[np.ndarray, np.ndarray]:
    """Wire-level classification of battery-scheme periods.

    The wire sits near the battery voltage in both steady windows only for
    complementary bits; identical bits leave it dead in exactly one window.
    Returns (kept flags, per-window levels stacked (2, batch)).
    """
    v = history.recording.voltages
    mid = v.shape[1] // 2
    lvl1 = np.mean(np.abs(v[history.hold1_window, mid]), axis=0)
    lvl2 = np.mean(np.abs(v[history.hold2_window, mid]), axis=0)
    on1 = np.atleast_1d(lvl1 > history.u0 / 2.0)
    on2 = np.atleast_1d(lvl2 > history.u0 / 2.0)
    return on1 & on2, np.stack([np.atleast_1d(lvl1), np.atleast_1d(lvl2)])


def run_br_bep(
    model: LineModel,
    u0: float,
    tau: float,
    rng: RngStream,
    variant: BrVariant | None = None,
    forced_bits: tuple[str, str] | None = None,
    record_every: int = 1,
    idle_time: float = 0.0,
) -> tuple[BepRecord, BrHistory]:
    """One battery/switch period: random (or forced) bits, mid-period flip.

    Identical choices leave the wire dead for one half (discarded);
    complementary choices hold it at the battery voltage through both halves
    (kept), each party inferring the other's bit as its own complement.  The
    full spatial history is retained, including the grounded idle tail when
    idle_time > 0.
    """
    variant = variant or BrVariant()
    if forced_bits is None:
        gen = rng.child(ROLE_BITS).generator()
        a, b = (BIT_NAMES[int(v)] for v in gen.integers(0, 2, size=2))
    else:
        a, b = forced_bits
    history = run_br_group(
        model, u0, tau, (a, b), variant, rng, count=1, record_every=record_every
    )
    if idle_time > 0:
        _append_idle(history, model, idle_time)
    kept_arr, _levels = classify_br(history)
    kept = bool(kept_arr[0])
    if kept:
        classification = Classification.MID_LEVEL
    else:
        classification = (
            Classification.LL_LEVEL if a == "L" else Classification.HH_LEVEL
        )
    record = BepRecord(
        index=0,
        alice_bit=a,
        bob_bit=b,
        classification=classification,
        kept=kept,
        alice_inferred_bob=_complement(a) if kept else None,
        bob_inferred_alice=_complement(b) if kept else None,
        error=kept and a == b,
    )
    return record, history


def _append_idle(history: BrHistory, model: LineModel, idle_time: float) -> None:
    """Extend a history with the grounded idle interval between periods."""
    dt = history.recording.dt
    idle_model = replace(
        model, term_a=Termination.grounded(), term_b=Termination.grounded()
    )
    sim = LineSimulator(idle_model, dt)
    steps = int(round(idle_time / dt))
    if steps < 1:
        return
    v_last = history.recording.voltages[-1]
    i_last = history.recording.currents[-1]
    x = sim.pack_arrays(v_last, i_last)
    u_seq = np.zeros((steps + 1, 2) + x.shape[1:])
    _, rec = sim.run(x, u_seq, record_every=1)
    history.recording.voltages = np.concatenate(
        [history.recording.voltages, rec.voltages[1:]], axis=0
    )
    history.recording.currents = np.concatenate(
        [history.recording.currents, rec.currents[1:]], axis=0
    )
