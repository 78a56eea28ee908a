"""Command-line front end.

Subcommands: `mars`, `landscape`, `simulate`, `optimal`, `propcheck`.  Every
command is deterministic given its flags; outputs are CSV with a single
header row, LF line endings, and 17-significant-digit decimals, so reruns are
byte-identical.  A JSON config file can supply defaults; flags override it,
and the effective configuration is echoed into a sidecar `<out>.meta.json`
next to any file written.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .beliefs import belief_stats
from .experiments import GaussianBinary
from .scenarios import (
    CRITERIA,
    SimulationConfig,
    lone_wolf_private_landscape,
    lone_wolf_public_landscape,
    mars_scenario,
    optimize_question,
    run_property_checks,
    run_simulation,
)
from .scoring import rule_by_name


@dataclass
class RunConfig:
    """Effective settings for one command after merging defaults, the config
    file, and command-line flags (in that order of precedence)."""

    mu0: float = 0.0
    mu1: float = 2.0
    sigma_y: float | None = None
    rule: str = "brier"
    grid: int = 101
    investigators: int = 50
    candidates: int = 15
    trials: int = 1000
    seed: int = 42
    out: str | None = None

    def experiment(self) -> GaussianBinary:
        return GaussianBinary(self.mu0, self.mu1, self.sigma_y)

    def effective(self) -> dict:
        data = dataclasses.asdict(self)
        data["sigma_y"] = self.experiment().sigma_y
        return data


_CONFIG_KEYS = {f.name for f in dataclasses.fields(RunConfig)}


def load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            raw = json.load(fh)
        experiment = raw.pop("experiment", {})
        for key, value in {**raw, **experiment}.items():
            if key not in _CONFIG_KEYS:
                raise ValueError(f"unknown config key {key!r}")
            setattr(cfg, key, value)
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    # Fail fast on bad numeric settings.
    cfg.experiment()
    rule_by_name(cfg.rule)
    return cfg


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_rows(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _write_sidecar(path: Path, command: str, cfg: RunConfig, extra: dict) -> None:
    meta = {"command": command, "options": {**cfg.effective(), **extra}}
    sidecar = Path(str(path) + ".meta.json")
    with open(sidecar, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_mars(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    values = mars_scenario()
    rows = values.as_rows()
    if args.json:
        print(json.dumps({name: value for name, value in rows}, indent=2, sort_keys=False))
    else:
        for name, value in rows:
            print(f"{name:<22}{_fmt(value)}")
    if cfg.out:
        path = Path(cfg.out)
        _write_rows(path, ["name", "value"], [[n, _fmt(v)] for n, v in rows])
        _write_sidecar(path, "mars", cfg, {})
    return 0


def cmd_landscape(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    experiment = cfg.experiment()
    rule = rule_by_name(cfg.rule)
    path = Path(cfg.out)
    if args.mode == "private":
        ps, values = lone_wolf_private_landscape(cfg.grid, experiment, rule)
        header = ["p", "value"]
        rows = [[_fmt(p), _fmt(v)] for p, v in zip(ps, values)]
    else:
        ps, rs, values = lone_wolf_public_landscape(cfg.grid, experiment, rule)
        header = ["p", "r", "value"]
        rows = [
            [_fmt(p), _fmt(r), _fmt(values[i, j])]
            for i, p in enumerate(ps)
            for j, r in enumerate(rs)
        ]
    _write_rows(path, header, rows)
    _write_sidecar(path, "landscape", cfg, {"mode": args.mode})
    print(f"wrote {len(rows)} rows to {path}")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    sim = SimulationConfig(
        n_investigators=cfg.investigators,
        n_candidates=cfg.candidates,
        criterion=args.criterion,
        experiment=cfg.experiment(),
        rule=rule_by_name(cfg.rule),
        rng_seed=cfg.seed,
    )
    records = run_simulation(sim)
    path = Path(cfg.out)
    header = [
        "m",
        "q_maj",
        "q_min",
        "investigator_belief",
        "favored_claim",
        "community_mean",
        "community_sd",
        "criterion_value",
    ]
    rows = [
        [
            _fmt(r.question.majority_fraction),
            _fmt(r.question.majority_belief),
            _fmt(r.question.minority_belief),
            _fmt(r.investigator_belief),
            r.favored_claim,
            _fmt(r.community_mean),
            _fmt(r.community_sd),
            _fmt(r.criterion_value),
        ]
        for r in records
    ]
    _write_rows(path, header, rows)
    _write_sidecar(path, "simulate", cfg, {"criterion": args.criterion})
    print(f"wrote {len(rows)} rows to {path}")
    return 0


def cmd_optimal(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    best = optimize_question(
        args.criterion, cfg.grid, cfg.experiment(), rule_by_name(cfg.rule)
    )
    question = best.question
    if best.investigator_belief is not None:
        favored = "1" if best.investigator_belief >= 0.5 else "0"
    else:
        favored = "1"
    mean, sd = belief_stats(question.community(), favored)
    payload = {
        "criterion": best.criterion,
        "m": question.majority_fraction,
        "q_maj": question.majority_belief,
        "q_min": question.minority_belief,
        "investigator_belief": best.investigator_belief,
        "favored_claim": favored,
        "community_mean": mean,
        "community_sd": sd,
        "value": best.value,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for key, value in payload.items():
            shown = _fmt(value) if isinstance(value, float) else str(value)
            print(f"{key:<20}{shown}")
    return 0


def cmd_propcheck(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    results = run_property_checks(cfg.trials, cfg.seed)
    failures = 0
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        failures += 0 if result.passed else 1
        print(f"{status} {result.name}: {result.detail}")
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override it")
    experiment = argparse.ArgumentParser(add_help=False)
    experiment.add_argument("--mu0", type=float, help="outcome mean under state 0")
    experiment.add_argument("--mu1", type=float, help="outcome mean under state 1")
    experiment.add_argument(
        "--sigma-y", dest="sigma_y", type=float, help="outcome sd (default |mu1-mu0|/2)"
    )
    experiment.add_argument(
        "--rule", choices=["brier", "ignorance"], help="scoring rule (default brier)"
    )

    parser = argparse.ArgumentParser(
        prog="peerlens",
        description="Value experiments under proposal-stage and outcome-stage peer review.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "mars",
        parents=[common],
        help="definitive-experiment worked example with a 70/30 split community",
    )
    p.add_argument("--json", action="store_true", help="emit a JSON object")
    p.add_argument("--out", help="also write name,value rows as CSV")
    p.set_defaults(func=cmd_mars)

    p = sub.add_parser(
        "landscape",
        parents=[common, experiment],
        help="value landscapes over investigator (and peer) belief grids",
    )
    p.add_argument("--mode", choices=["private", "public"], required=True)
    p.add_argument("--grid", type=int, help="grid points per axis (default 101)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_landscape)

    p = sub.add_parser(
        "simulate",
        parents=[common, experiment],
        help="question choices of investigators sampling from a question pool",
    )
    p.add_argument("--criterion", choices=list(CRITERIA), required=True)
    p.add_argument("--investigators", type=int, help="number of investigators (default 50)")
    p.add_argument("--candidates", type=int, help="candidate questions each (default 15)")
    p.add_argument("--seed", type=int, help="RNG seed (default 42)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser(
        "optimal",
        parents=[common, experiment],
        help="grid-search the best question under a criterion",
    )
    p.add_argument("--criterion", choices=list(CRITERIA), required=True)
    p.add_argument("--grid", type=int, help="grid points per axis (default 101)")
    p.add_argument("--json", action="store_true", help="emit a JSON object")
    p.set_defaults(func=cmd_optimal)

    p = sub.add_parser(
        "propcheck",
        parents=[common],
        help="run the scoring, decision-theory, and heterogeneity property checks",
    )
    p.add_argument("--trials", type=int, help="random trials per check (default 1000)")
    p.add_argument("--seed", type=int, help="RNG seed (default 42)")
    p.set_defaults(func=cmd_propcheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
