"""Desk-scale workbench for balance-control reinforcement learning.

A two-wheeled robot reduced to an inverted pendulum on an accelerating base,
kept upright (pitch within a few degrees) by either tabular Q-learning over
pitch bins, a small from-scratch replay-trained Q network, or a PID baseline
that certifies the task is solvable.
"""

from .codec import (
    ActionTable,
    StateBins,
    action_value,
    bin_center,
    bin_pitch,
    make_obs,
)
from .config import ConfigError, TrainConfig, load_config, load_preset
from .harness import (
    EpisodeRecord,
    RunResult,
    export_csv,
    parse_csv,
    run,
    run_dqn,
    run_pid_baseline,
    run_q_learning,
)
from .mlp import Mlp, backward, forward, init_network, sgd_step
from .qlearn import QTable, UpdateRule, epsilon_greedy, greedy_action, q_update
from .replay import ReplayBuffer, Transition, select_action, train_on_minibatch
from .simulator import PhysicsParams, PidGains, SimState, is_fallen, reset, step
from .svgplot import render_reward_plot

__version__ = "0.1.0"

__all__ = [
    "ActionTable",
    "ConfigError",
    "EpisodeRecord",
    "Mlp",
    "PhysicsParams",
    "PidGains",
    "QTable",
    "ReplayBuffer",
    "RunResult",
    "SimState",
    "StateBins",
    "TrainConfig",
    "Transition",
    "UpdateRule",
    "action_value",
    "backward",
    "bin_center",
    "bin_pitch",
    "epsilon_greedy",
    "export_csv",
    "forward",
    "greedy_action",
    "init_network",
    "is_fallen",
    "load_config",
    "load_preset",
    "make_obs",
    "parse_csv",
    "q_update",
    "render_reward_plot",
    "reset",
    "run",
    "run_dqn",
    "run_pid_baseline",
    "run_q_learning",
    "select_action",
    "sgd_step",
    "step",
    "train_on_minibatch",
    "__version__",
]
