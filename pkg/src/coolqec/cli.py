"""Command-line entry point: simulate | sweep-scaling | sweep-surface | zeno | verify.

Exit codes: 0 success; 1 a check or run failed; 2 bad configuration;
3 integration diverged; 4 dimension guard exceeded; 5 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import experiments, zeno
from .config import COMMANDS, ConfigError, RunConfig, parse_config
from .csvio import CsvTable, write_csv
from .lindblad import DimensionGuardError, IntegrationDivergedError
from .verification import run_verification_battery

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_DIVERGED = 3
EXIT_GUARD = 4
EXIT_IO = 5


def _normalized_amplitudes(params) -> tuple[float, float]:
    alpha, beta = params["alpha"], params["beta"]
    scale = 1.0 / math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
    return alpha * scale, beta * scale


def _run_simulate(cfg: RunConfig, out_dir: Path) -> int:
    p = cfg.params
    psi0 = _normalized_amplitudes(p)
    trace = experiments.run_fidelity_curve(
        gamma=p["gamma"], kappa=p["kappa"], lam=p["lam"], psi0=psi0,
        horizon=p["T"], step_hint=p["step_hint"],
        errors_on_ancillas=p["errors_on_ancillas"],
    )
    baseline = experiments.uncorrected_baseline(p["gamma"], trace.times)
    rows = [
        (t, f, b)
        for t, f, b in zip(trace.times, trace.values, baseline.values)
    ]
    write_csv(CsvTable(("t", "fidelity", "baseline"), rows), out_dir / p["output"])
    return EXIT_OK


def _run_sweep_scaling(cfg: RunConfig, out_dir: Path) -> int:
    p = cfg.params
    results = experiments.sweep_scaling(
        kappa_list=p["kappa_list"], s_grid=p["s_grid"], gamma=p["gamma"],
        psi0=_normalized_amplitudes(p), horizon=p["T"],
    )
    rows = []
    for res in results:
        for s, fid in zip(res.s_values, res.fidelities):
            rows.append((res.kappa, s, s * res.kappa, fid))
    write_csv(CsvTable(("kappa", "s", "lambda", "F_T"), rows), out_dir / p["output"])
    return EXIT_OK


def _run_sweep_surface(cfg: RunConfig, out_dir: Path) -> int:
    p = cfg.params
    result = experiments.sweep_surface(
        gamma_grid=p["gamma_grid"], kappa_grid=p["kappa_grid"],
        psi0=_normalized_amplitudes(p), horizon=p["T"],
    )
    rows = []
    for i, gamma in enumerate(result.gamma_grid):
        for j, kappa in enumerate(result.kappa_grid):
            rows.append((gamma, kappa, result.fidelity[i, j]))
    write_csv(CsvTable(("gamma", "kappa", "F_T"), rows), out_dir / p["output"])
    return EXIT_OK


def _run_zeno(cfg: RunConfig, out_dir: Path) -> int:
    p = cfg.params
    alpha, beta = _normalized_amplitudes(p)
    rows = []
    for n_cycles in p["cycles_list"]:
        report = zeno.run_zeno_cycles(
            zeno.ZenoConfig(
                cycles=n_cycles, n_env=p["n_env"], coupling=p["coupling"],
                total_time=p["T"], alpha=alpha, beta=beta,
                env_state_index=p["env_state_index"],
            )
        )
        rows.append(
            (n_cycles, p["T"] / n_cycles, report.survival_probability, report.deviation)
        )
    write_csv(CsvTable(("N", "tau", "survival", "deviation"), rows), out_dir / p["output"])
    return EXIT_OK


def _run_verify(cfg: RunConfig, out_dir: Path) -> int:
    results = run_verification_battery()
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {status}  {r.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


_RUNNERS = {
    "simulate": _run_simulate,
    "sweep-scaling": _run_sweep_scaling,
    "sweep-surface": _run_sweep_surface,
    "zeno": _run_zeno,
    "verify": _run_verify,
}


def dispatch(cfg: RunConfig, out_dir: Path) -> int:
    return _RUNNERS[cfg.command](cfg, out_dir)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="coolqec",
        description="Continuous-time quantum error correction by cooling: "
        "simulation and verification runs emitting CSV.",
        epilog="Exit codes: 0 ok, 1 check/run failed, 2 bad config, "
        "3 integration diverged, 4 dimension guard, 5 I/O error.",
    )
    parser.add_argument("command", nargs="?", choices=COMMANDS,
                        help="what to run (may also come from the config file)")
    parser.add_argument("--config", type=Path, default=None,
                        help="key=value configuration file")
    parser.add_argument("--out", type=Path, default=Path("."),
                        help="output directory for CSV files")
    args, extra = parser.parse_known_args(argv)

    overrides = []
    for item in extra:
        stripped = item[2:] if item.startswith("--") else item
        if "=" not in stripped:
            print(f"error: unrecognized argument {item!r} (expected --key=value)",
                  file=sys.stderr)
            return EXIT_CONFIG
        overrides.append(stripped)

    try:
        text = ""
        if args.config is not None:
            text = args.config.read_text(encoding="utf-8")
        cfg = parse_config(text, overrides=tuple(overrides), command=args.command)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        args.out.mkdir(parents=True, exist_ok=True)
        return dispatch(cfg, args.out)
    except IntegrationDivergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except DimensionGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
