"""Experience replay and the network agent's training and acting steps.

The buffer is a fixed-capacity ring: pushes append, and once full the oldest
entry is evicted. Sampling draws indices uniformly with replacement, so a
minibatch can repeat entries and no priority scheme is involved.

Targets bootstrap from the online network itself (there is no separate
target network): terminal transitions use the bare reward, the rest use
reward + gamma * max_a Q(next_obs, a). Minibatch training walks the batch in
order and, per transition, recomputes the target with the network as it is
at that moment, takes the loss on the taken action only, backpropagates and
applies one SGD step. Duplicating a transition in a batch is therefore
exactly two sequential single-transition updates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import mlp
from .mlp import Mlp


@dataclass(frozen=True)
class Transition:
    obs: np.ndarray
    action: int
    reward: float
    next_obs: np.ndarray
    terminal: bool


class ReplayBuffer:
    """Uniform-sampling ring buffer of transitions."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be at least 1")
        self.capacity = capacity
        self._storage: deque[Transition] = deque(maxlen=capacity)

    def __len__(self) -> int:
        return len(self._storage)

    def push(self, transition: Transition) -> None:
        self._storage.append(transition)

    def contents(self) -> list[Transition]:
        """Oldest-to-newest snapshot, for inspection and tests."""
        return list(self._storage)

    def sample(self, batch_size: int, rng) -> list[Transition]:
        """batch_size uniform draws with replacement."""
        if len(self._storage) == 0:
            raise ValueError("cannot sample from an empty replay buffer")
        if batch_size < 1:
            raise ValueError("batch_size must be at least 1")
        idx = rng.integers(0, len(self._storage), size=batch_size)
        return [self._storage[int(i)] for i in idx]


def compute_target(transition: Transition, net: Mlp, gamma: float) -> float:
    """Bootstrapped regression target for the taken action. Reads only the
    reward, terminal flag and next_obs of the transition."""
    if transition.terminal:
        return float(transition.reward)
    q_next, _ = mlp.forward(net, transition.next_obs)
    return float(transition.reward + gamma * q_next.max())


def train_on_minibatch(
    net: Mlp,
    batch: list[Transition],
    gamma: float,
    lr: float,
    loss: str = "l1",
) -> float:
    """Sequential per-transition SGD over the batch; returns the mean loss."""
    if not batch:
        raise ValueError("cannot train on an empty batch")
    loss_and_grad = mlp.loss_fn(loss)
    total = 0.0
    for t in batch:
        target = compute_target(t, net, gamma)
        q_values, cache = mlp.forward(net, t.obs)
        loss_value, output_grad = loss_and_grad(q_values, target, t.action)
        grads = mlp.backward(net, cache, output_grad)
        mlp.sgd_step(net, grads, lr)
        total += loss_value
    return total / len(batch)


def select_action(net: Mlp, obs: np.ndarray, epsilon: float, rng) -> int:
    """Epsilon-greedy over the network's Q row.

    The uniform draw happens first; the greedy branch costs exactly one
    forward evaluation and the explore branch costs none. Argmax ties
    resolve to the lowest index.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must be in [0, 1]")
    n_actions = net.layer_sizes[-1]
    if rng.random() < epsilon:
        return int(rng.integers(0, n_actions))
    q_values, _ = mlp.forward(net, obs)
    return int(np.argmax(q_values))
