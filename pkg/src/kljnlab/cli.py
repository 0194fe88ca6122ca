"""Command-line experiment runner.

Subcommands: run one campaign, sweep a parameter, print the key-level
security table, list scenarios, or self-test (the acceptance suite).  Exit
codes: 0 success, 2 configuration error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import shutil
import sys
from pathlib import Path

from .campaign import (
    NumericalError,
    run_campaign,
    run_sweep,
    security_table,
    write_campaign,
    write_sweep,
)
from .config import (
    SCENARIOS,
    ConfigError,
    default_config,
    load_config,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kljnlab",
        description="noise-loop key exchange / battery-scheme attack laboratory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", type=Path, help="campaign config (YAML)")
        p.add_argument("--seed", type=int, help="override the master seed")
        p.add_argument(
            "--out", type=Path, default=Path("campaign_out"),
            help="output directory (default: campaign_out)",
        )
        p.add_argument(
            "--trials", type=int,
            help="override the number of bit exchange periods",
        )
        p.add_argument("--quiet", action="store_true", help="suppress progress")

    p_run = sub.add_parser("run", help="execute one campaign")
    common(p_run)
    p_run.add_argument("--scenario", choices=SCENARIOS, help="override scenario")

    p_sweep = sub.add_parser("sweep", help="run the configured parameter sweep")
    common(p_sweep)

    p_sec = sub.add_parser(
        "report-security", help="variational-distance table for a given q"
    )
    p_sec.add_argument("--q", type=float, required=True, help="per-bit advantage")
    p_sec.add_argument(
        "--key-lengths", type=int, nargs="+", default=[500, 1000]
    )
    p_sec.add_argument("--epsilon", type=float, default=1e-302)
    p_sec.add_argument("--pa-rounds", type=int, default=0)

    sub.add_parser("list-scenarios", help="print the scenario names")

    p_test = sub.add_parser("self-test", help="run the acceptance suite")
    p_test.add_argument(
        "--criteria", type=int, nargs="*",
        help="subset of criterion numbers (default: all)",
    )
    return parser


def _load(args) -> "ExperimentConfig":
    cfg = load_config(args.config) if args.config else default_config()
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    if getattr(args, "trials", None):
        cfg = cfg.with_value("protocol.n_beps", int(args.trials))
    if getattr(args, "scenario", None):
        cfg = cfg.with_value("scenario", args.scenario)
    return cfg


def _cleanup(out_dir: Path) -> None:
    if out_dir.exists():
        shutil.rmtree(out_dir, ignore_errors=True)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "list-scenarios":
            for name in SCENARIOS:
                print(name)
            return EXIT_OK

        if args.command == "report-security":
            reports = security_table(
                args.q, args.key_lengths, args.epsilon, args.pa_rounds
            )
            print("N,q_eff,delta_exact,delta_linear,epsilon,satisfied")
            for rep in reports:
                print(
                    f"{rep.n_bits},{rep.q:.6g},"
                    f"{rep.delta_exact.decimal_string()},"
                    f"{rep.delta_linear.decimal_string()},"
                    f"{rep.epsilon_target:.6g},{rep.satisfied}"
                )
            return EXIT_OK

        if args.command == "self-test":
            from . import acceptance

            results = acceptance.run_all(getattr(args, "criteria", None))
            for res in results:
                print(res.pretty())
            return EXIT_OK if all(r.passed for r in results) else 1

        cfg = _load(args)
        out_dir = Path(args.out)
        if args.command == "run":
            try:
                report = run_campaign(cfg)
                write_campaign(report, out_dir)
            except (NumericalError, FloatingPointError) as exc:
                _cleanup(out_dir)
                print(f"numerical failure: {exc}", file=sys.stderr)
                return EXIT_NUMERICAL
            if not args.quiet:
                kept = report.kept_count()
                print(
                    f"{cfg.scenario}: {report.n_beps} periods, {kept} kept; "
                    f"report in {out_dir}"
                )
            return EXIT_OK

        if args.command == "sweep":
            if cfg.data["sweep"]["parameter"] is None:
                raise ConfigError("sweep requires a sweep section in the config")
            try:
                outputs, fits = run_sweep(cfg)
                write_sweep(cfg, outputs, fits, out_dir)
            except (NumericalError, FloatingPointError) as exc:
                _cleanup(out_dir)
                print(f"numerical failure: {exc}", file=sys.stderr)
                return EXIT_NUMERICAL
            if not args.quiet:
                for name, fit in sorted(fits.items()):
                    print(
                        f"{name}: coefficient={fit.coefficient:.4g} "
                        f"r^2={fit.r_squared:.4f}"
                    )
                print(f"sweep report in {out_dir}")
            return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
