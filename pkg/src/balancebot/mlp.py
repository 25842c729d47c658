"""Minimal dense network with hand-written reverse-mode gradients.

Hidden layers are ReLU, the output layer is linear, parameters are float64
numpy arrays. Layer i maps sizes[i] -> sizes[i+1] with a (sizes[i],
sizes[i+1]) weight matrix and a (sizes[i+1],) bias, so forward is a chain of
x @ W + b. Weights are He-initialized (zero-mean normal scaled by
sqrt(2/fan_in)), biases start at zero.

backward() computes exact gradients of <output_grad, output> by the chain
rule; it is validated against central finite differences in the test suite.
Training is plain SGD. The loss applied to a Q vector touches only the taken
action's entry: L1 by default (gradient is -sign(residual) at that entry,
with sign(0) = 0), squared error as an option.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LOSS_KINDS = ("l1", "squared")


@dataclass
class Mlp:
    layer_sizes: tuple[int, ...]
    weights: list[np.ndarray]
    biases: list[np.ndarray]

    @property
    def n_layers(self) -> int:
        return len(self.weights)


@dataclass
class ForwardCache:
    """Intermediates needed by backward: the input to each layer and each
    layer's pre-activation."""

    inputs: list[np.ndarray]
    preacts: list[np.ndarray]


@dataclass
class Gradients:
    weights: list[np.ndarray]
    biases: list[np.ndarray]


def param_count(layer_sizes) -> int:
    return sum(
        (n_in + 1) * n_out
        for n_in, n_out in zip(layer_sizes, layer_sizes[1:])
    )


def init_network(layer_sizes, rng) -> Mlp:
    """Fresh network; same seed gives bit-identical parameters."""
    sizes = tuple(int(s) for s in layer_sizes)
    if len(sizes) < 2:
        raise ValueError("need an input and an output layer")
    if any(s < 1 for s in sizes):
        raise ValueError("layer sizes must be positive")
    weights = []
    biases = []
    for n_in, n_out in zip(sizes, sizes[1:]):
        scale = np.sqrt(2.0 / n_in)
        weights.append(rng.normal(0.0, scale, size=(n_in, n_out)))
        biases.append(np.zeros(n_out, dtype=np.float64))
    return Mlp(layer_sizes=sizes, weights=weights, biases=biases)


def forward(net: Mlp, x: np.ndarray) -> tuple[np.ndarray, ForwardCache]:
    """Evaluate the network on one input vector."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (net.layer_sizes[0],):
        raise ValueError(
            f"input shape {x.shape} does not match input width "
            f"{net.layer_sizes[0]}"
        )
    inputs = []
    preacts = []
    a = x
    last = net.n_layers - 1
    for i in range(net.n_layers):
        inputs.append(a)
        z = a @ net.weights[i] + net.biases[i]
        preacts.append(z)
        a = z if i == last else np.maximum(z, 0.0)
    return a, ForwardCache(inputs=inputs, preacts=preacts)


def backward(net: Mlp, cache: ForwardCache, output_grad: np.ndarray) -> Gradients:
    """Gradients of <output_grad, forward(net, x)> w.r.t. every parameter.

    cache must come from a forward() call on this same net; shape congruence
    is checked.
    """
    output_grad = np.asarray(output_grad, dtype=np.float64)
    if output_grad.shape != (net.layer_sizes[-1],):
        raise ValueError(
            f"output_grad shape {output_grad.shape} does not match output "
            f"width {net.layer_sizes[-1]}"
        )
    if len(cache.inputs) != net.n_layers or any(
        cache.inputs[i].shape != (net.layer_sizes[i],)
        or cache.preacts[i].shape != (net.layer_sizes[i + 1],)
        for i in range(net.n_layers)
    ):
        raise ValueError("cache does not match network shape")
    grad_w = [np.empty_like(w) for w in net.weights]
    grad_b = [np.empty_like(b) for b in net.biases]
    delta = output_grad
    for i in range(net.n_layers - 1, -1, -1):
        grad_w[i] = np.outer(cache.inputs[i], delta)
        grad_b[i] = delta.copy()
        if i > 0:
            delta = (net.weights[i] @ delta) * (cache.preacts[i - 1] > 0.0)
    return Gradients(weights=grad_w, biases=grad_b)


def sgd_step(net: Mlp, grads: Gradients, lr: float) -> Mlp:
    """In-place plain gradient descent: p -= lr * g."""
    if len(grads.weights) != net.n_layers or any(
        gw.shape != w.shape or gb.shape != b.shape
        for gw, w, gb, b in zip(
            grads.weights, net.weights, grads.biases, net.biases
        )
    ):
        raise ValueError("gradient shapes do not match network")
    for i in range(net.n_layers):
        net.weights[i] -= lr * grads.weights[i]
        net.biases[i] -= lr * grads.biases[i]
    return net


def l1_loss_and_grad(
    q_values: np.ndarray, target: float, action_index: int
) -> tuple[float, np.ndarray]:
    """|target - q[a]| and its gradient w.r.t. the q vector. Zero residual
    gives a zero gradient, so the induced update is a no-op."""
    if not 0 <= action_index < len(q_values):
        raise IndexError(
            f"action index {action_index} out of range 0..{len(q_values) - 1}"
        )
    residual = target - q_values[action_index]
    grad = np.zeros(len(q_values), dtype=np.float64)
    if residual > 0.0:
        grad[action_index] = -1.0
    elif residual < 0.0:
        grad[action_index] = 1.0
    return abs(float(residual)), grad


def squared_loss_and_grad(
    q_values: np.ndarray, target: float, action_index: int
) -> tuple[float, np.ndarray]:
    """(target - q[a])^2 and its gradient w.r.t. the q vector."""
    if not 0 <= action_index < len(q_values):
        raise IndexError(
            f"action index {action_index} out of range 0..{len(q_values) - 1}"
        )
    residual = target - q_values[action_index]
    grad = np.zeros(len(q_values), dtype=np.float64)
    grad[action_index] = -2.0 * residual
    return float(residual * residual), grad


def loss_fn(kind: str):
    if kind == "l1":
        return l1_loss_and_grad
    if kind == "squared":
        return squared_loss_and_grad
    raise ValueError(f"unknown loss {kind!r}, expected one of {LOSS_KINDS}")


def save_network(net: Mlp, path) -> None:
    """Plain-text snapshot: header line with layer sizes, then per layer the
    weight matrix row by row and the bias line. Full precision, lossless."""
    lines = [" ".join(str(s) for s in net.layer_sizes)]
    for w, b in zip(net.weights, net.biases):
        for row in w:
            lines.append(" ".join(repr(float(v)) for v in row))
        lines.append(" ".join(repr(float(v)) for v in b))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def load_network(path) -> Mlp:
    """Rebuild a network saved by save_network, bit-for-bit."""
    with open(path, "r", encoding="ascii") as fh:
        lines = [line.strip() for line in fh if line.strip()]
    if not lines:
        raise ValueError(f"empty network file: {path}")
    sizes = tuple(int(tok) for tok in lines[0].split())
    if len(sizes) < 2 or any(s < 1 for s in sizes):
        raise ValueError(f"bad layer sizes header in {path}")
    weights = []
    biases = []
    pos = 1
    for n_in, n_out in zip(sizes, sizes[1:]):
        need = n_in + 1
        if pos + need > len(lines):
            raise ValueError(f"truncated network file: {path}")
        block = [
            [float(tok) for tok in lines[pos + r].split()] for r in range(need)
        ]
        if any(len(row) != n_out for row in block):
            raise ValueError(f"bad row width in network file: {path}")
        weights.append(np.array(block[:n_in], dtype=np.float64))
        biases.append(np.array(block[n_in], dtype=np.float64))
        pos += need
    if pos != len(lines):
        raise ValueError(f"trailing data in network file: {path}")
    return Mlp(layer_sizes=sizes, weights=weights, biases=biases)
