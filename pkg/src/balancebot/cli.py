"""Command line entry point.

Subcommands:
  train  - run one config (or bundled preset), write <name>.csv, <name>.svg,
           <name>.png and the final model snapshot into --out
  sweep  - run several configs and additionally write a combined plot
  plot   - re-render plots from existing episode-log CSV files

Every run is fully determined by (config, seed); --seed overrides the
config's seed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import figures, harness, mlp, qlearn, svgplot
from .config import (
    ConfigError,
    TrainConfig,
    load_config,
    load_preset,
    preset_names,
    with_overrides,
)


def _gather_configs(args) -> list[TrainConfig]:
    cfgs = []
    for path in args.config or []:
        cfg = load_config(path)
        if cfg.name == TrainConfig.name:
            cfg = with_overrides(cfg, name=Path(path).stem)
        cfgs.append(cfg)
    for name in args.preset or []:
        cfgs.append(load_preset(name))
    if not cfgs:
        raise ConfigError("no configuration given; use --config or --preset")
    if args.seed is not None:
        cfgs = [with_overrides(c, seed=args.seed) for c in cfgs]
    return cfgs


def _write_outputs(cfg: TrainConfig, result: harness.RunResult, out: Path):
    out.mkdir(parents=True, exist_ok=True)
    base = out / cfg.name
    harness.export_csv(result.log, base.with_suffix(".csv"))
    rewards = [rec.reward for rec in result.log]
    curve = [(cfg.name, rewards)]
    svgplot.render_reward_plot(
        curve, base.with_suffix(".svg"), y_floor=cfg.pen, y_ceil=cfg.iterations
    )
    figures.save_reward_png(
        curve, base.with_suffix(".png"), y_floor=cfg.pen, y_ceil=cfg.iterations
    )
    if result.qtable is not None:
        qlearn.save_qtable(result.qtable, out / f"{cfg.name}.qtable.txt")
    if result.net is not None:
        mlp.save_network(result.net, out / f"{cfg.name}.net.txt")


def _cmd_train(args) -> int:
    cfgs = _gather_configs(args)
    if len(cfgs) != 1:
        raise ConfigError("train takes exactly one --config or --preset")
    cfg = cfgs[0]
    result = harness.run(cfg)
    _write_outputs(cfg, result, Path(args.out))
    last = result.log[-1]
    best = max(r.reward for r in result.log)
    print(
        f"{cfg.name}: {len(result.log)} episodes, "
        f"final reward {last.reward:g}, best {best:g}"
    )
    return 0


def _cmd_sweep(args) -> int:
    cfgs = _gather_configs(args)
    names = [c.name for c in cfgs]
    if len(set(names)) != len(names):
        raise ConfigError(f"duplicate run names in sweep: {names}")
    out = Path(args.out)
    curves = []
    y_floor = min(c.pen for c in cfgs)
    y_ceil = max(c.iterations for c in cfgs)
    for cfg in cfgs:
        result = harness.run(cfg)
        _write_outputs(cfg, result, out)
        curves.append((cfg.name, [rec.reward for rec in result.log]))
        best = max(r.reward for r in result.log)
        print(f"{cfg.name}: best reward {best:g}")
    combined = out / args.name
    svgplot.render_reward_plot(
        curves, combined.with_suffix(".svg"), y_floor=y_floor, y_ceil=y_ceil
    )
    figures.save_reward_png(
        curves, combined.with_suffix(".png"), y_floor=y_floor, y_ceil=y_ceil
    )
    print(f"combined plot: {combined.with_suffix('.svg')}")
    return 0


def _cmd_plot(args) -> int:
    curves = []
    for csv_path in args.csv:
        log = harness.parse_csv(csv_path)
        curves.append((Path(csv_path).stem, [rec.reward for rec in log]))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    base = out / args.name
    svgplot.render_reward_plot(curves, base.with_suffix(".svg"))
    figures.save_reward_png(curves, base.with_suffix(".png"))
    print(f"plot: {base.with_suffix('.svg')}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balancebot",
        description=(
            "Balance-control RL workbench: tabular Q-learning, a small "
            "from-scratch DQN, and a PID baseline on an inverted-pendulum "
            "simulator."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_args(p, multi: bool):
        p.add_argument(
            "--config", action="append", metavar="PATH",
            help="config file (key = value lines)"
            + ("; repeatable" if multi else ""),
        )
        p.add_argument(
            "--preset", action="append", metavar="NAME",
            help="bundled preset name"
            + ("; repeatable" if multi else "")
            + f" (available: {', '.join(preset_names())})",
        )
        p.add_argument(
            "--seed", type=int, default=None,
            help="override the config seed",
        )
        p.add_argument(
            "--out", default="out", metavar="DIR",
            help="output directory (default: out)",
        )

    p_train = sub.add_parser("train", help="run one training config")
    add_run_args(p_train, multi=False)
    p_train.set_defaults(func=_cmd_train)

    p_sweep = sub.add_parser(
        "sweep", help="run several configs and write a combined plot"
    )
    add_run_args(p_sweep, multi=True)
    p_sweep.add_argument(
        "--name", default="sweep", help="name for the combined outputs"
    )
    p_sweep.set_defaults(func=_cmd_sweep)

    p_plot = sub.add_parser(
        "plot", help="re-render plots from episode-log CSV files"
    )
    p_plot.add_argument("csv", nargs="+", help="episode-log CSV files")
    p_plot.add_argument("--out", default="out", metavar="DIR")
    p_plot.add_argument("--name", default="plot")
    p_plot.set_defaults(func=_cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
