"""Matplotlib figure rendering for campaign and sweep outputs.

Figures are a convenience view of the same series written to the delimited
files; every number shown is recoverable from records.csv / sweep.csv, so
skipping figure rendering (output.figures: false) loses nothing but the
pictures.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .security import ScalingFit


def _save(fig, out_dir: Path, name: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_dir / name, dpi=130, bbox_inches="tight")
    plt.close(fig)


def levels_figure(report, out_dir: Path) -> None:
    ms_u = report.series.get("ms_u")
    if ms_u is None or "levels_u" not in report.extras:
        return
    fig, ax = plt.subplots(figsize=(7, 4))
    shown = min(len(ms_u), 2000)
    ax.semilogy(np.arange(shown), ms_u[:shown], ".", ms=2, alpha=0.5,
                label="measured")
    for level, label in zip(report.extras["levels_u"], ("LL", "LH/HL", "HH")):
        ax.axhline(level, ls=":", color="k", lw=1)
        ax.annotate(label, (shown * 1.005, level), fontsize=8)
    ax.set_xlabel("bit exchange period")
    ax.set_ylabel(r"mean-square channel voltage [V$^2$]")
    ax.set_title("per-period level classification")
    _save(fig, out_dir, "levels.png")


def attack_figure(report, out_dir: Path) -> None:
    if not report.attack_estimates:
        return
    names = sorted(report.attack_estimates)
    ests = [report.attack_estimates[n] for n in names]
    fig, ax = plt.subplots(figsize=(max(5, 0.9 * len(names) + 2), 4))
    x = np.arange(len(names))
    q = [e.q_hat for e in ests]
    err = np.array(
        [[e.q_hat - e.ci_low for e in ests], [e.ci_high - e.q_hat for e in ests]]
    )
    ax.bar(x, q, yerr=err, capsize=3, color="tab:blue", alpha=0.8)
    ax.axhline(0.0, color="k", lw=1)
    ax.axhline(0.5, color="r", lw=1, ls="--", label="full crack (q = 0.5)")
    ax.set_xticks(x)
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel(r"guessing advantage $\hat{q}$")
    ax.set_title("per-attack advantage (Wilson 95% CI)")
    ax.legend(loc="best", fontsize=8)
    _save(fig, out_dir, "attacks.png")


def security_figure(report, out_dir: Path) -> None:
    if not report.security_reports:
        return
    fig, ax = plt.subplots(figsize=(6, 4))
    by_attack: dict[str, list] = {}
    for name, rep in report.security_reports:
        by_attack.setdefault(name, []).append(rep)
    for name, reps in sorted(by_attack.items()):
        reps = sorted(reps, key=lambda r: r.n_bits)
        ns = [r.n_bits for r in reps]
        logs = [r.delta_exact.log10 for r in reps]
        ax.plot(ns, logs, "o-", label=name)
    ax.set_xlabel("key length N")
    ax.set_ylabel(r"$\log_{10}\Delta$ (exact)")
    ax.set_title("key-level statistical distance")
    ax.legend(fontsize=8)
    _save(fig, out_dir, "security.png")


def br_history_figure(report, out_dir: Path) -> None:
    sample = report.extras.get("history_sample")
    if sample is None:
        return
    pattern, data = sample
    t = data["times"]
    v = data["voltages"]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    mid = v.shape[1] // 2
    ax1.plot(t, v[:, 0], lw=1, label="end A")
    ax1.plot(t, v[:, mid], lw=1, label="middle")
    ax1.plot(t, v[:, -1], lw=1, label="end B")
    ax1.set_xlabel("time [s]")
    ax1.set_ylabel("wire voltage [V]")
    ax1.set_title(f"battery-scheme period, bits {pattern[0]}{pattern[1]}")
    ax1.legend(fontsize=8)
    c = data["currents"]
    profile = np.mean(np.abs(c[: len(c) // 4]), axis=0)
    ax2.plot(np.arange(profile.size), profile, "o-")
    ax2.set_xlabel("branch index (A side to B side)")
    ax2.set_ylabel("mean |current| during charge-up [A]")
    ax2.set_title("spatial charge-up current profile")
    _save(fig, out_dir, "br_history.png")


def campaign_figures(report, out_dir: Path) -> None:
    out_dir = Path(out_dir)
    levels_figure(report, out_dir)
    attack_figure(report, out_dir)
    security_figure(report, out_dir)
    br_history_figure(report, out_dir)


def sweep_figure(
    parameter: str,
    outputs: list,
    fits: dict[str, ScalingFit],
    out_dir: Path,
) -> None:
    out_dir = Path(out_dir)
    fig, ax = plt.subplots(figsize=(6, 4))
    values = np.array([v for v, _ in outputs], dtype=float)
    for name, fit in sorted(fits.items()):
        q = np.array(
            [rep.attack_estimates[name].q_hat for _, rep in outputs]
        )
        half = np.array(
            [rep.attack_estimates[name].half_width for _, rep in outputs]
        )
        ax.errorbar(values, q, yerr=half, fmt="o", capsize=3, label=name)
        grid = np.linspace(0, values.max() * 1.05, 64)
        ax.plot(
            grid,
            fit.coefficient * grid**fit.exponent,
            "--",
            lw=1,
            label=f"{name} fit (r²={fit.r_squared:.3f})",
        )
    ax.set_xlabel(parameter)
    ax.set_ylabel(r"guessing advantage $\hat{q}$")
    ax.set_title("advantage vs invested non-ideality")
    ax.legend(fontsize=8)
    _save(fig, out_dir, "sweep.png")
