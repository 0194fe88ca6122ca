"""Campaign execution: run scenarios, sweep parameters, emit reports.

A campaign is one scenario (loop or battery scheme, with one non-ideality
and its attack) executed for a configured number of bit-exchange periods
under a master seed.  Everything an output file contains except wall-clock
provenance is a pure function of (config, seed); sweeps derive one
independent sub-stream per point so execution order never matters.
"""
from __future__ import annotations

import csv
import hashlib
import math
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .circuits import LoopConfig, analytic_levels
from .config import SWEEPABLE, ExperimentConfig
from .line import LineModel, Termination
from .noise import RngStream
from .protocol import (
    BIT_NAMES,
    BepRecord,
    BrVariant,
    Classification,
    DefenseConfig,
    RandomWalkConfig,
    SessionColumns,
    apply_endpoint_defense,
    br_default_ramp,
    classify_br,
    defense_full_scale,
    run_br_group,
    run_kljn_batch,
)
from . import attacks as atk
from .security import (
    QEstimate,
    ScalingFit,
    SecurityReport,
    fit_scaling,
    pa_advantage_map,
)

CSV_COLUMNS = (
    "index",
    "alice_bit",
    "bob_bit",
    "classification",
    "kept",
    "alice_inferred_bob",
    "bob_inferred_alice",
    "error",
    "defense_discard",
    "leak_statistic",
    "ms_u_hat",
    "ms_i_hat",
)

PROVENANCE_MARKER = "== provenance =="


class NumericalError(RuntimeError):
    """A campaign failed numerically (non-finite state, solver breakdown)."""


@dataclass
class CampaignReport:
    config: ExperimentConfig
    records: list[BepRecord]
    defense_discards: np.ndarray
    attack_estimates: dict[str, QEstimate]
    security_reports: list[tuple[str, SecurityReport]]
    extras: dict[str, Any] = field(default_factory=dict)
    series: dict[str, np.ndarray] = field(default_factory=dict)
    scaling_fit: ScalingFit | None = None
    elapsed_seconds: float = 0.0

    @property
    def n_beps(self) -> int:
        return len(self.records)

    def kept_count(self) -> int:
        return sum(r.kept for r in self.records)

    def error_count(self) -> int:
        return sum(r.error for r in self.records)


def loop_config(cfg: ExperimentConfig) -> LoopConfig:
    p = cfg.data["physics"]
    wire = 0.0
    t_wire = 0.0
    if cfg.scenario in ("kljn_wire",):
        wire = p["wire_fraction"] * (p["r_low"] + p["r_high"])
        t_wire = p["t_wire"]
    return LoopConfig(
        r_a=p["r_low"],
        r_b=p["r_low"],
        r_low=p["r_low"],
        r_high=p["r_high"],
        t_eff=p["t_eff"],
        bandwidth=p["bandwidth"],
        r_wire=wire,
        t_wire=t_wire,
        practical=0 < wire <= 0.02 * (p["r_low"] + p["r_high"]),
    )


def defense_config(cfg: ExperimentConfig) -> DefenseConfig:
    d = cfg.data["defense"]
    return DefenseConfig(
        comparison_resolution_bits=d["comparison_resolution_bits"],
        leak_cap=d["leak_cap"],
        transient_mode=d["transient_mode"],
        compare_endpoints=d["compare_endpoints"],
    )


def walk_config(cfg: ExperimentConfig) -> RandomWalkConfig:
    w = cfg.data["walk"]
    return RandomWalkConfig(v_rms=w["v_rms"], t_r=w["t_r"], walk_dt=w["walk_dt"])


# ---------------------------------------------------------------------------
# loop (KLJN) campaigns
# ---------------------------------------------------------------------------


def _merge_columns(parts: list[SessionColumns]) -> SessionColumns:
    return SessionColumns(
        alice_bits=np.concatenate([p.alice_bits for p in parts]),
        bob_bits=np.concatenate([p.bob_bits for p in parts]),
        classification=np.concatenate([p.classification for p in parts]),
        kept=np.concatenate([p.kept for p in parts]),
        error=np.concatenate([p.error for p in parts]),
        defense_discard=np.concatenate([p.defense_discard for p in parts]),
        leak_raw=np.concatenate([p.leak_raw for p in parts]),
        ms_u=np.concatenate([p.ms_u for p in parts]),
        ms_i=np.concatenate([p.ms_i for p in parts]),
    )


def _run_kljn_campaign(
    cfg: ExperimentConfig, rng: RngStream
) -> tuple[SessionColumns, dict[str, QEstimate], dict[str, Any]]:
    scenario = cfg.scenario
    base = loop_config(cfg)
    proto = cfg.data["protocol"]
    tau = proto["tau"]
    n_beps = proto["n_beps"]
    chunk_size = proto["chunk_size"]
    oversample = proto["oversample"]
    defense = defense_config(cfg)

    injection_sigma = (
        cfg.data["injection"]["sigma"] if scenario == "kljn_injection" else 0.0
    )
    track_sources = scenario == "kljn_coupler"
    walk = None
    if scenario == "kljn_transient" and defense.transient_mode == "random_walk":
        walk = walk_config(cfg)
        if walk.t_r >= tau:
            raise NumericalError("walk deadline leaves no measurement window")

    coupler = None
    if scenario == "kljn_coupler":
        c = cfg.data["coupler"]
        coupler = atk.CouplerSpec(
            c["kappa"], c["kappa_exponent"], c["reference_frequency"]
        )

    full_scale = defense_full_scale(base)
    parts: list[SessionColumns] = []
    stat_parts: dict[str, list[np.ndarray]] = {}
    scale_parts: dict[str, list[np.ndarray]] = {}
    kept_parts: dict[str, list[np.ndarray]] = {}
    truth_parts: dict[str, list[np.ndarray]] = {}

    def feed(name, stats, scales, keep, truth):
        stat_parts.setdefault(name, []).append(np.asarray(stats)[keep])
        scale = np.broadcast_to(np.asarray(scales, dtype=float), np.shape(stats))
        scale_parts.setdefault(name, []).append(scale[keep])
        kept_parts.setdefault(name, []).append(keep)
        truth_parts.setdefault(name, []).append(truth[keep])

    start = 0
    chunk_index = 0
    while start < n_beps:
        count = min(chunk_size, n_beps - start)
        batch, cols = run_kljn_batch(
            base,
            tau,
            count,
            rng.child(chunk_index),
            oversample=oversample,
            injection_sigma=injection_sigma,
            track_sources=track_sources,
            walk=walk,
            start_index=start,
        )
        if defense.compare_endpoints:
            apply_endpoint_defense(cols, batch, defense, full_scale)
        if not (np.all(np.isfinite(cols.ms_u)) and np.all(np.isfinite(cols.ms_i))):
            raise NumericalError("non-finite channel statistics")

        keep = cols.kept.copy()
        truth = cols.true_hl()
        if scenario == "kljn_ideal":
            stats, scales = atk.kljn_null_statistics(batch)
            names = atk.ENERGY_FLOW_NAMES + atk.DAMPING_NAMES + (
                atk.WIRE_JOHNSON_NAME,
            )
            for k, name in enumerate(names):
                feed(name, stats[k], scales[k], keep, truth)
        elif scenario == "kljn_wire":
            stats = atk.wire_resistance_statistic(batch.u_end_a, batch.u_end_b)
            feed("wire_resistance", stats, 0.0, keep, truth)
        elif scenario == "kljn_injection":
            stats = atk.current_injection_statistic(
                batch.i_end_a, batch.i_end_b, batch.i_e
            )
            feed("current_injection", stats, 0.0, keep, truth)
        elif scenario == "kljn_coupler":
            stats = atk.coupler_statistic(
                batch.source_part_a, batch.source_part_b, coupler
            )
            scale = np.mean(batch.u_c**2, axis=1)
            feed("coupler", stats, scale, keep, truth)
        elif scenario == "kljn_transient":
            fs = 1.0 / batch.dt
            if walk is not None:
                window = min(
                    atk.drift_window_samples(
                        walk.v_rms, walk.walk_dt, base.r_low, base.r_high,
                        fs, oversample,
                    ),
                    batch.walk_samples,
                )
            else:
                window = 2 * oversample
            stats = atk.transient_statistic(
                batch.u_c, batch.i_c, window, oversample
            )
            feed("transient", stats, 0.0, keep, truth)
        parts.append(cols)
        start += count
        chunk_index += 1

    columns = _merge_columns(parts)
    estimates: dict[str, QEstimate] = {}
    extras: dict[str, Any] = {}
    for idx, name in enumerate(sorted(stat_parts)):
        stats = np.concatenate(stat_parts[name])
        scales = np.concatenate(scale_parts[name])
        truths = np.concatenate(truth_parts[name])
        if stats.size:
            estimates[name] = atk.score_statistics(
                stats, truths, rng.child(10_000 + idx), zero_scale=scales
            )
    if walk is not None:
        extras["walk_abort_fraction"] = float(
            np.mean(columns.classification == int(Classification.ABORT))
        )
    return columns, estimates, extras


# ---------------------------------------------------------------------------
# battery-scheme campaigns
# ---------------------------------------------------------------------------

_BR_PATTERNS = (("L", "L"), ("L", "H"), ("H", "L"), ("H", "H"))


def br_line_model(cfg: ExperimentConfig) -> tuple[LineModel, BrVariant]:
    ln = cfg.data["line"]
    scenario = cfg.scenario
    open_end = Termination.open()
    if scenario == "br_wire_johnson":
        model = LineModel(
            ln["n_segments"],
            ln["series_r_total"] / ln["n_segments"],
            0.0,
            ln["shunt_c"],
            open_end,
            open_end,
        )
        variant = BrVariant(wire_temperature=cfg.data["physics"]["t_wire"])
    else:
        model = LineModel(
            ln["n_segments"], 0.0, ln["series_l"], ln["shunt_c"], open_end, open_end
        )
        if scenario == "br_damped":
            variant = BrVariant(
                damping=model.wave_impedance,
                damping_temperature=ln["damping_temperature"],
            )
        else:
            variant = BrVariant()
    return model, variant


def br_run_parameters(cfg: ExperimentConfig, model: LineModel) -> dict[str, Any]:
    """Per-scenario run lengths and recording rates for the battery wire."""
    scenario = cfg.scenario
    rt_mult = cfg.data["line"]["tau_round_trips"]
    if scenario == "br_damped":
        t_rt = model.round_trip_time
        return dict(
            tau=(rt_mult or 360.0) * t_rt,
            record_every=8,
            hold_settle=8.0 * t_rt,
            noise_bandwidth=0.45 / t_rt,
            chunk=50,
        )
    if scenario == "br_wire_johnson":
        ramp = br_default_ramp(model)
        return dict(
            tau=(rt_mult or 12.0) * ramp,
            record_every=4,
            hold_settle=None,
            noise_bandwidth=None,
            chunk=50,
        )
    t_rt = model.round_trip_time
    return dict(
        tau=(rt_mult or 24.0) * t_rt,
        record_every=4,
        hold_settle=None,
        noise_bandwidth=None,
        chunk=200,
    )


def _run_br_campaign(
    cfg: ExperimentConfig, rng: RngStream
) -> tuple[list[BepRecord], np.ndarray, dict[str, QEstimate], dict[str, Any]]:
    scenario = cfg.scenario
    model, variant = br_line_model(cfg)
    params = br_run_parameters(cfg, model)
    n_beps = cfg.data["protocol"]["n_beps"]
    u0 = cfg.data["line"]["u0"]

    gen = rng.child(0).generator()
    bits = gen.integers(0, 2, size=(n_beps, 2), dtype=np.uint8)

    if scenario == "br_ideal":
        names = atk.ENERGY_FLOW_NAMES
    elif scenario == "br_damped":
        names = atk.DAMPING_NAMES
    else:
        names = (atk.WIRE_JOHNSON_NAME,)

    records: list[BepRecord | None] = [None] * n_beps
    stat_rows: dict[str, list[np.ndarray]] = {n: [] for n in names}
    truth_rows: list[np.ndarray] = []
    extras: dict[str, Any] = {}

    for pat_idx, pattern in enumerate(_BR_PATTERNS):
        sel = np.nonzero(
            (bits[:, 0] == BIT_NAMES.index(pattern[0]))
            & (bits[:, 1] == BIT_NAMES.index(pattern[1]))
        )[0]
        if sel.size == 0:
            continue
        complementary = pattern[0] != pattern[1]
        for lo in range(0, sel.size, params["chunk"]):
            group = sel[lo : lo + params["chunk"]]
            history = run_br_group(
                model,
                u0,
                params["tau"],
                pattern,
                variant,
                rng.child(1 + pat_idx, lo),
                count=group.size,
                record_every=params["record_every"],
                noise_bandwidth=params["noise_bandwidth"],
                hold_settle=params["hold_settle"],
                settle_margin=params.get("settle_margin", 0.0),
            )
            if not np.all(np.isfinite(history.recording.voltages)):
                raise NumericalError("non-finite line state")
            kept, levels = classify_br(history)
            for j, bep in enumerate(group):
                a, b = pattern
                k = bool(kept[j])
                if k:
                    classification = Classification.MID_LEVEL
                else:
                    classification = (
                        Classification.LL_LEVEL if a == "L"
                        else Classification.HH_LEVEL
                    )
                records[bep] = BepRecord(
                    index=int(bep),
                    alice_bit=a,
                    bob_bit=b,
                    classification=classification,
                    kept=k,
                    alice_inferred_bob=("H" if a == "L" else "L") if k else None,
                    bob_inferred_alice=("H" if b == "L" else "L") if k else None,
                    error=k and a == b,
                    ms_u_hat=float(levels[0, j]),
                    ms_i_hat=float(levels[1, j]),
                )
            if complementary:
                obs = atk.EveObservables.from_br_history(history)
                if scenario == "br_ideal":
                    stats, scales = atk.energy_flow_statistics(obs)
                elif scenario == "br_damped":
                    stats, scales = atk.damping_statistics(obs)
                else:
                    st, sc, psd_levels = atk.wire_johnson_statistics(
                        obs, segment_length=128
                    )
                    stats, scales = st[None, :], sc[None, :]
                    extras.setdefault("open_end_psd", []).append(
                        float(np.max(psd_levels))
                    )
                for k, name in enumerate(names):
                    stat_rows[name].append(np.atleast_1d(stats[k]))
                truth_rows.append(
                    np.full(group.size, pattern == ("H", "L"), dtype=bool)
                )
            if "history_sample" not in extras:
                extras["history_sample"] = (pattern, _thin_history(history))

    estimates: dict[str, QEstimate] = {}
    truth = np.concatenate(truth_rows) if truth_rows else np.zeros(0, dtype=bool)
    for idx, name in enumerate(names):
        if stat_rows[name]:
            stats = np.concatenate(stat_rows[name])
            estimates[name] = atk.score_statistics(
                stats, truth, rng.child(10_000 + idx)
            )
    if "open_end_psd" in extras:
        extras["open_end_psd"] = float(np.mean(extras["open_end_psd"]))
    done = [r for r in records if r is not None]
    discards = np.zeros(len(done), dtype=bool)
    return done, discards, estimates, extras


def _thin_history(history) -> dict[str, np.ndarray]:
    v = history.recording.voltages
    if v.ndim == 3:
        v = v[:, :, 0]
        c = history.recording.currents[:, :, 0]
    else:
        c = history.recording.currents
    step = max(1, v.shape[0] // 400)
    return {
        "times": np.arange(v.shape[0])[::step] * history.recording.dt,
        "voltages": v[::step],
        "currents": c[::step],
    }


# ---------------------------------------------------------------------------
# campaign orchestration
# ---------------------------------------------------------------------------


def security_table(
    q: float, key_lengths: list[int], epsilon: float, pa_rounds: int
) -> list[SecurityReport]:
    """Distance figures for a measured advantage, after privacy amplification."""
    q_eff = pa_advantage_map(min(max(q, 0.0), 0.5), pa_rounds)
    if q_eff >= 0.5:
        q_eff = math.nextafter(0.5, 0.0)
    return [SecurityReport.evaluate(q_eff, n, epsilon) for n in key_lengths]


def run_campaign(
    cfg: ExperimentConfig, stream_id: tuple[int, ...] = ()
) -> CampaignReport:
    """Execute one campaign; pure function of (config, seed, stream_id)."""
    t0 = time.perf_counter()
    rng = RngStream(cfg.seed, stream_id)
    if cfg.scenario.startswith("br_"):
        records, discards, estimates, extras = _run_br_campaign(cfg, rng)
        columns = None
    else:
        columns, estimates, extras = _run_kljn_campaign(cfg, rng)
        records = columns.records()
        discards = columns.defense_discard
        cap = cfg.data["defense"]["leak_cap"]
        if cap is not None:
            survivors = sum(
                1 for r in records if r.kept and r.leak_statistic <= cap
            )
            extras["leak_cap_survivors"] = survivors

    sec = cfg.data["security"]
    reports: list[tuple[str, SecurityReport]] = []
    for name, est in sorted(estimates.items()):
        for rep in security_table(
            est.q_hat, sec["key_lengths"], sec["epsilon"], sec["pa_rounds"]
        ):
            reports.append((name, rep))

    series: dict[str, np.ndarray] = {}
    if columns is not None:
        series["ms_u"] = columns.ms_u
        series["ms_i"] = columns.ms_i
        p = cfg.data["physics"]
        table = analytic_levels(p["r_low"], p["r_high"], p["t_eff"], p["bandwidth"])
        extras["levels_u"] = list(table.u_levels)
        extras["levels_i"] = list(table.i_levels)

    report = CampaignReport(
        config=cfg,
        records=records,
        defense_discards=np.asarray(discards, dtype=bool),
        attack_estimates=estimates,
        security_reports=reports,
        extras=extras,
        series=series,
        elapsed_seconds=time.perf_counter() - t0,
    )
    return report


def run_sweep(
    cfg: ExperimentConfig,
) -> tuple[list[tuple[float, CampaignReport]], dict[str, ScalingFit]]:
    """One campaign per sweep value, plus through-origin fits per attack.

    Each point owns the derived stream (point_index,), so points are
    independent and could execute concurrently without changing a byte.
    """
    sweep = cfg.data["sweep"]
    parameter = sweep["parameter"]
    if parameter is None:
        raise ValueError("config has no sweep section")
    path = ".".join(SWEEPABLE[parameter])
    outputs = []
    for k, value in enumerate(sweep["values"]):
        sub = cfg.with_value(path, value)
        outputs.append((value, run_campaign(sub, stream_id=(k,))))
    fits: dict[str, ScalingFit] = {}
    names = outputs[0][1].attack_estimates.keys()
    for name in names:
        points = [
            (value, rep.attack_estimates[name])
            for value, rep in outputs
            if name in rep.attack_estimates
        ]
        if len(points) >= 4:
            fits[name] = fit_scaling(points)
    return outputs, fits


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def write_records_csv(path: Path, report: CampaignReport) -> None:
    discards = report.defense_discards
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for k, r in enumerate(report.records):
            writer.writerow(
                [
                    r.index,
                    r.alice_bit,
                    r.bob_bit,
                    r.classification.name,
                    int(r.kept),
                    r.alice_inferred_bob or "",
                    r.bob_inferred_alice or "",
                    int(r.error),
                    int(discards[k]) if k < len(discards) else 0,
                    _fmt(r.leak_statistic),
                    _fmt(r.ms_u_hat),
                    _fmt(r.ms_i_hat),
                ]
            )


def render_report(report: CampaignReport) -> str:
    """The aggregate report document; everything above the provenance
    section is deterministic given (config, seed)."""
    cfg = report.config
    lines = []
    out = lines.append
    out(f"kljnlab campaign report: scenario {cfg.scenario}")
    out("")
    out("== config (resolved) ==")
    out(cfg.echo_yaml().rstrip())
    out("")
    out("== results ==")
    n = report.n_beps
    kept = report.kept_count()
    out(f"periods_executed: {n}")
    if n:
        from .security import wilson_interval

        lo, hi = wilson_interval(kept, n)
        out(
            f"periods_kept: {kept} (fraction {_fmt(kept / n)}, "
            f"wilson95 [{_fmt(lo)}, {_fmt(hi)}])"
        )
        out(f"period_errors: {report.error_count()}")
        out(f"defense_discards: {int(np.sum(report.defense_discards))}")
    for key in sorted(report.extras):
        if key == "history_sample":
            continue
        out(f"{key}: {_fmt(report.extras[key])}")
    if report.attack_estimates:
        out("")
        out("attack estimates (p = 0.5 + q):")
        for name, est in sorted(report.attack_estimates.items()):
            out(
                f"  {name}: p_hat={_fmt(est.p_hat)} q_hat={_fmt(est.q_hat)} "
                f"ci=[{_fmt(est.ci_low)}, {_fmt(est.ci_high)}] n={est.n}"
            )
    if report.security_reports:
        out("")
        out("security (variational distance after privacy amplification):")
        for name, rep in report.security_reports:
            out(
                f"  {name} N={rep.n_bits} q_eff={_fmt(rep.q)}: "
                f"delta_exact={rep.delta_exact.decimal_string()} "
                f"delta_linear={rep.delta_linear.decimal_string()} "
                f"epsilon={_fmt(rep.epsilon_target)} "
                f"satisfied={rep.satisfied} linear_regime={rep.linear_regime}"
            )
    if report.scaling_fit is not None:
        f = report.scaling_fit
        out("")
        out(
            f"scaling fit: coefficient={_fmt(f.coefficient)} "
            f"exponent={_fmt(f.exponent)} r_squared={_fmt(f.r_squared)} "
            f"intercept={_fmt(f.intercept)} (se {_fmt(f.intercept_se)})"
        )
    out("")
    body = "\n".join(lines)
    digest = hashlib.sha256(body.encode()).hexdigest()
    prov = [
        PROVENANCE_MARKER,
        f"package_version: {__version__}",
        f"master_seed: {cfg.seed}",
        f"data_sha256: {digest}",
        f"wall_time_utc: {datetime.now(timezone.utc).isoformat()}",
        f"elapsed_seconds: {report.elapsed_seconds:.3f}",
    ]
    return body + "\n".join(prov) + "\n"


def data_section(report_text: str) -> str:
    """The deterministic part of a report document."""
    return report_text.split(PROVENANCE_MARKER)[0]


def write_campaign(report: CampaignReport, out_dir: Path, figures: bool | None = None) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_records_csv(out_dir / "records.csv", report)
    (out_dir / "report.txt").write_text(render_report(report), encoding="utf-8")
    if figures is None:
        figures = report.config.data["output"]["figures"]
    if figures:
        from . import plotting

        plotting.campaign_figures(report, out_dir / "figures")


def write_sweep(
    cfg: ExperimentConfig,
    outputs: list[tuple[float, CampaignReport]],
    fits: dict[str, ScalingFit],
    out_dir: Path,
) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    parameter = cfg.data["sweep"]["parameter"]
    with open(out_dir / "sweep.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["parameter", "value", "attack", "p_hat", "q_hat", "ci_low",
             "ci_high", "n"]
        )
        for value, rep in outputs:
            for name, est in sorted(rep.attack_estimates.items()):
                writer.writerow(
                    [parameter, _fmt(value), name, _fmt(est.p_hat),
                     _fmt(est.q_hat), _fmt(est.ci_low), _fmt(est.ci_high),
                     est.n]
                )
    lines = [f"kljnlab sweep report: {parameter}", ""]
    lines.append("== config (resolved) ==")
    lines.append(cfg.echo_yaml().rstrip())
    lines.append("")
    lines.append("== fits (weighted, through origin) ==")
    for name, f in sorted(fits.items()):
        lines.append(
            f"  {name}: coefficient={_fmt(f.coefficient)} "
            f"exponent={_fmt(f.exponent)} r_squared={_fmt(f.r_squared)} "
            f"intercept={_fmt(f.intercept)} (se {_fmt(f.intercept_se)})"
        )
    lines.append("")
    body = "\n".join(lines)
    digest = hashlib.sha256(body.encode()).hexdigest()
    prov = [
        PROVENANCE_MARKER,
        f"package_version: {__version__}",
        f"master_seed: {cfg.seed}",
        f"data_sha256: {digest}",
        f"wall_time_utc: {datetime.now(timezone.utc).isoformat()}",
    ]
    (out_dir / "report.txt").write_text(body + "\n".join(prov) + "\n", encoding="utf-8")
    for k, (value, rep) in enumerate(outputs):
        write_campaign(rep, out_dir / f"point_{k:02d}", figures=False)
    if cfg.data["output"]["figures"] and fits:
        from . import plotting

        plotting.sweep_figure(parameter, outputs, fits, out_dir / "figures")
