"""Tabular Q-learning over (pitch bin, action index).

Two update rules are available. "standard" is the usual one-step rule,

    Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a))

"accumulate" omits the subtraction of the current estimate,

    Q(s,a) += alpha * (r + gamma * max_a' Q(s',a'))

and piles targets onto the stored value without a fixed point; it is kept
selectable as an ablation, but it provably diverges under steady positive
reward and must not be used for anything that is supposed to converge.
Terminal transitions drop the bootstrap term in both rules (target = r).

The table keeps an explicit policy array alongside the values. The policy is
initialized uniformly at random over actions and re-pointed to the argmax of
the updated row after every update, so greedy action selection is a plain
policy lookup.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UPDATE_RULES = ("standard", "accumulate")


@dataclass(frozen=True)
class UpdateRule:
    variant: str = "standard"
    alpha: float = 0.8
    gamma: float = 0.999

    def __post_init__(self) -> None:
        if self.variant not in UPDATE_RULES:
            raise ValueError(
                f"unknown update rule {self.variant!r}, "
                f"expected one of {UPDATE_RULES}"
            )
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must be in (0, 1]")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must be in [0, 1]")


@dataclass
class QTable:
    """Action-value grid plus the stored greedy policy."""

    values: np.ndarray
    policy: np.ndarray

    @property
    def n_states(self) -> int:
        return self.values.shape[0]

    @property
    def n_actions(self) -> int:
        return self.values.shape[1]


def init_qtable(n_states: int, n_actions: int, rng) -> QTable:
    """Zero values; policy drawn uniformly at random per state."""
    if n_states < 1 or n_actions < 1:
        raise ValueError("need at least one state and one action")
    values = np.zeros((n_states, n_actions), dtype=np.float64)
    policy = rng.integers(0, n_actions, size=n_states, dtype=np.int64)
    return QTable(values=values, policy=policy)


def q_update(
    table: QTable,
    state: int,
    action: int,
    reward: float,
    next_state: int,
    terminal: bool,
    rule: UpdateRule,
) -> QTable:
    """Apply one update in place and re-point the policy for the touched
    state. Argmax ties resolve to the lowest index."""
    q = table.values[state, action]
    if terminal:
        target = reward + 0.0
    else:
        target = reward + rule.gamma * table.values[next_state].max()
    if rule.variant == "standard":
        table.values[state, action] = q + rule.alpha * (target - q)
    else:
        table.values[state, action] = q + rule.alpha * target
    table.policy[state] = int(np.argmax(table.values[state]))
    return table


def greedy_action(table: QTable, state: int) -> int:
    """Stored-policy lookup; always an argmax of the state's value row."""
    return int(table.policy[state])


def epsilon_greedy(table: QTable, state: int, epsilon: float, rng) -> int:
    """Explore with probability epsilon, else the stored greedy action.

    The uniform draw happens first and the action draw only on the explore
    branch, so the consumed stream length reveals which branch ran.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must be in [0, 1]")
    if rng.random() < epsilon:
        return int(rng.integers(0, table.n_actions))
    return greedy_action(table, state)


def save_qtable(table: QTable, path) -> None:
    """Write the value grid as plain text: one line per state bin, one
    tab-separated column per action, full float precision."""
    lines = []
    for row in table.values:
        lines.append("\t".join(repr(float(v)) for v in row))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def load_qtable(path) -> QTable:
    """Read a grid written by save_qtable. The stored policy is rebuilt as
    the row argmax, which loses any random initial entries for untouched
    rows (those rows are all-zero, so the rebuilt policy is still greedy)."""
    rows = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append([float(tok) for tok in line.split("\t")])
    if not rows:
        raise ValueError(f"empty Q-table file: {path}")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError(f"ragged Q-table file: {path}")
    values = np.array(rows, dtype=np.float64)
    policy = np.argmax(values, axis=1).astype(np.int64)
    return QTable(values=values, policy=policy)
