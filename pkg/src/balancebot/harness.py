"""Training loops, episode logging and the delimited log format.

Every run follows the same episode shape: reset, then up to `iterations`
control steps. Surviving a step earns reward 1. When a step ends fallen, the
episode breaks immediately; if the reward accumulated so far is at or below
`target` the penalty `pen` is applied (and, for the learners, a terminal
update or terminal experience is recorded), otherwise the episode is marked
passed and no penalty is applied. Surviving all iterations ends the episode
with neither penalty nor the passed mark.

The tabular learner updates its table on every surviving step and on the
penalized terminal step. The network learner pushes an experience on every
surviving step and on the penalized terminal step, and trains on sampled
minibatches once the episode is over (skipped while the buffer is empty).

Epsilon starts at epsilon_start and is multiplied by epsilon_decay after
each episode, floored at epsilon_floor.

Seeding: the config seed spawns four independent generator streams in fixed
order (init, env, action, replay). Policy/network initialization draws only
from init, resets only from env, action selection only from action, and
minibatch sampling only from replay, so trajectories are reproducible
independently of how much the other streams consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import codec, mlp, qlearn, replay, simulator
from .config import TrainConfig
from .mlp import Mlp
from .qlearn import QTable
from .replay import ReplayBuffer, Transition

CSV_HEADER = "episode,reward,steps,epsilon,mean_loss,passed"


@dataclass(frozen=True)
class EpisodeRecord:
    episode: int
    reward: float
    steps: int
    epsilon: float
    mean_loss: float | None
    passed: bool


EpisodeLog = list[EpisodeRecord]


@dataclass
class RunResult:
    """Episode log plus the final model artifact (table, net, or neither)."""

    log: EpisodeLog
    qtable: QTable | None = None
    net: Mlp | None = None


def spawn_streams(seed: int) -> dict[str, np.random.Generator]:
    """Named child generators derived from one seed, in fixed order."""
    children = np.random.SeedSequence(seed).spawn(4)
    names = ("init", "env", "action", "replay")
    return {n: np.random.default_rng(c) for n, c in zip(names, children)}


def _epsilon_schedule(cfg: TrainConfig):
    eps = cfg.epsilon_start
    for _ in range(cfg.episodes):
        yield max(cfg.epsilon_floor, eps)
        eps = max(cfg.epsilon_floor, eps * cfg.epsilon_decay)


def run_q_learning(cfg: TrainConfig) -> RunResult:
    """Tabular training run."""
    streams = spawn_streams(cfg.seed)
    rule = qlearn.UpdateRule(
        variant=cfg.update_rule, alpha=cfg.alpha, gamma=cfg.gamma
    )
    table = qlearn.init_qtable(cfg.bins.count, len(cfg.actions), streams["init"])
    log: EpisodeLog = []
    for episode, eps in enumerate(_epsilon_schedule(cfg)):
        state = simulator.reset(cfg.physics, streams["env"])
        s = codec.bin_pitch(math.degrees(state.pitch), cfg.bins)
        reward_total = 0
        steps = 0
        penalized = False
        passed = False
        for _ in range(cfg.iterations):
            a = qlearn.epsilon_greedy(table, s, eps, streams["action"])
            state, fallen = simulator.step(
                state, codec.action_value(a, cfg.actions), cfg.physics,
                cfg.limit_deg,
            )
            s_next = codec.bin_pitch(math.degrees(state.pitch), cfg.bins)
            if fallen:
                if reward_total <= cfg.target:
                    qlearn.q_update(table, s, a, cfg.pen, s_next, True, rule)
                    penalized = True
                else:
                    passed = True
                break
            reward_total += 1
            steps += 1
            qlearn.q_update(table, s, a, 1.0, s_next, False, rule)
            s = s_next
        reward = float(steps) + (cfg.pen if penalized else 0.0)
        log.append(EpisodeRecord(episode, reward, steps, eps, None, passed))
    return RunResult(log=log, qtable=table)


def run_dqn(cfg: TrainConfig) -> RunResult:
    """Replay-trained network run."""
    streams = spawn_streams(cfg.seed)
    net = mlp.init_network(cfg.layer_sizes, streams["init"])
    buffer = ReplayBuffer(cfg.buffer_capacity)
    log: EpisodeLog = []
    for episode, eps in enumerate(_epsilon_schedule(cfg)):
        state = simulator.reset(cfg.physics, streams["env"])
        obs = codec.make_obs(state, cfg.obs_mode)
        reward_total = 0
        steps = 0
        penalized = False
        passed = False
        for _ in range(cfg.iterations):
            a = replay.select_action(net, obs, eps, streams["action"])
            state, fallen = simulator.step(
                state, codec.action_value(a, cfg.actions), cfg.physics,
                cfg.limit_deg,
            )
            next_obs = codec.make_obs(state, cfg.obs_mode)
            if fallen:
                if reward_total <= cfg.target:
                    buffer.push(Transition(obs, a, cfg.pen, next_obs, True))
                    penalized = True
                else:
                    passed = True
                break
            reward_total += 1
            steps += 1
            buffer.push(Transition(obs, a, 1.0, next_obs, False))
            obs = next_obs
        losses = []
        if len(buffer) > 0:
            for _ in range(cfg.batches_per_episode):
                batch = buffer.sample(cfg.batch_size, streams["replay"])
                losses.append(
                    replay.train_on_minibatch(
                        net, batch, cfg.gamma, cfg.lr, cfg.loss
                    )
                )
        mean_loss = sum(losses) / len(losses) if losses else None
        reward = float(steps) + (cfg.pen if penalized else 0.0)
        log.append(
            EpisodeRecord(episode, reward, steps, eps, mean_loss, passed)
        )
    return RunResult(log=log, net=net)


def run_pid_baseline(cfg: TrainConfig) -> RunResult:
    """Fixed-controller episodes with the same logging and accounting."""
    streams = spawn_streams(cfg.seed)
    log: EpisodeLog = []
    for episode, eps in enumerate(_epsilon_schedule(cfg)):
        state = simulator.reset(cfg.physics, streams["env"])
        memory = simulator.PID_MEMORY_ZERO
        reward_total = 0
        steps = 0
        penalized = False
        passed = False
        for _ in range(cfg.iterations):
            command, memory = simulator.pid_action(
                state, cfg.pid, memory, cfg.physics
            )
            state, fallen = simulator.step(
                state, command, cfg.physics, cfg.limit_deg
            )
            if fallen:
                if reward_total <= cfg.target:
                    penalized = True
                else:
                    passed = True
                break
            reward_total += 1
            steps += 1
        reward = float(steps) + (cfg.pen if penalized else 0.0)
        log.append(EpisodeRecord(episode, reward, steps, eps, None, passed))
    return RunResult(log=log)


def run(cfg: TrainConfig) -> RunResult:
    """Dispatch on cfg.algo."""
    if cfg.algo == "q-learning":
        return run_q_learning(cfg)
    if cfg.algo == "dqn":
        return run_dqn(cfg)
    if cfg.algo == "pid-baseline":
        return run_pid_baseline(cfg)
    raise ValueError(f"unknown algo {cfg.algo!r}")


def _format_float(x: float) -> str:
    x = float(x)
    if x.is_integer():
        return str(int(x))
    return repr(x)


def format_csv(log: EpisodeLog) -> str:
    """Render an episode log as delimited text. Floats use shortest
    round-trip decimals, dropping the fraction when integral; a missing
    loss is an empty field."""
    lines = [CSV_HEADER]
    for rec in log:
        loss = "" if rec.mean_loss is None else _format_float(rec.mean_loss)
        lines.append(
            f"{rec.episode},{_format_float(rec.reward)},{rec.steps},"
            f"{_format_float(rec.epsilon)},{loss},"
            f"{'true' if rec.passed else 'false'}"
        )
    return "\n".join(lines) + "\n"


def export_csv(log: EpisodeLog, path) -> None:
    try:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(format_csv(log))
    except OSError as exc:
        raise OSError(f"cannot write episode log to {path}: {exc}") from None


def parse_csv(path) -> EpisodeLog:
    """Inverse of export_csv: parse_csv(export_csv(log)) == log."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"missing episode-log header in {path}")
    log: EpisodeLog = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 6:
            raise ValueError(f"{path}, line {lineno}: expected 6 fields")
        episode, reward, steps, epsilon, loss, passed = parts
        if passed not in ("true", "false"):
            raise ValueError(
                f"{path}, line {lineno}: bad passed flag {passed!r}"
            )
        log.append(
            EpisodeRecord(
                episode=int(episode),
                reward=float(reward),
                steps=int(steps),
                epsilon=float(epsilon),
                mean_loss=None if loss == "" else float(loss),
                passed=passed == "true",
            )
        )
    return log
