"""Two-wheeled inverted-pendulum simulator.

The robot is reduced to a planar pendulum of length L hinged to a base that
accelerates horizontally. A velocity command from the agent maps linearly to
base acceleration (command_gain), saturating at accel_limit. Pitch dynamics:

    pitch_accel = (g/L)*sin(pitch) - (base_accel/L)*cos(pitch)
                  - pitch_damping*pitch_rate

Integration is semi-implicit Euler: each control period of length
control_period is split into an integer number of substeps of length substep,
and within a substep the velocities are updated before the positions. The
upright rest state with zero command is a bit-exact fixed point.

Also defined here: the fall predicate (|pitch| at or beyond a degree limit)
and a discrete PID controller used as the solvability baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicsParams:
    """Plant and integration constants. Defaults give a desk-scale robot.

    pitch_damping is the only dissipation a pitch-only policy can exploit;
    it must exceed gravity/pendulum_length * control_period / 2 or the
    zero-order-hold sampling delay pumps more energy into the pendulum than
    any static feedback can remove. The default leaves the upright state
    unstable (a zero command from one degree falls in about half a second)
    while keeping the plant stabilizable at the control rate.
    """

    pendulum_length: float = 0.5      # L, meters
    gravity: float = 9.81             # g, m/s^2
    pitch_damping: float = 3.0        # 1/s, viscous term on pitch_rate
    command_gain: float = 0.02        # (m/s^2) per command unit
    accel_limit: float = 8.0          # m/s^2, base acceleration saturation
    control_period: float = 0.05      # s, one agent step
    substep: float = 0.01             # s, integrator substep
    init_pitch_jitter: float = 0.0175 # rad, reset draws pitch in +/- this

    def __post_init__(self) -> None:
        if self.pendulum_length <= 0:
            raise ValueError("pendulum_length must be positive")
        if self.gravity <= 0:
            raise ValueError("gravity must be positive")
        if self.pitch_damping < 0:
            raise ValueError("pitch_damping must be non-negative")
        if self.accel_limit <= 0:
            raise ValueError("accel_limit must be positive")
        if self.control_period <= 0 or self.substep <= 0:
            raise ValueError("control_period and substep must be positive")
        if self.init_pitch_jitter < 0:
            raise ValueError("init_pitch_jitter must be non-negative")
        n = round(self.control_period / self.substep)
        if n < 1 or abs(n * self.substep - self.control_period) > 1e-9:
            raise ValueError("substep must divide control_period exactly")

    @property
    def substeps(self) -> int:
        return round(self.control_period / self.substep)


@dataclass(frozen=True)
class SimState:
    """Instantaneous simulator state. Pitch in radians, zero is upright."""

    pitch: float = 0.0
    pitch_rate: float = 0.0
    base_pos: float = 0.0
    base_vel: float = 0.0
    sim_time: float = 0.0


@dataclass(frozen=True)
class PidGains:
    """Gains for the baseline controller, acting on pitch error in degrees.

    The error convention is e = 0 - pitch_deg, so restoring control needs
    negative gains with this plant (a positive command reduces pitch
    acceleration). integral_clamp bounds the raw error integral.
    """

    kp: float = -60.0
    ki: float = -5.0
    kd: float = -15.0
    integral_clamp: float = 50.0

    def __post_init__(self) -> None:
        if self.integral_clamp < 0:
            raise ValueError("integral_clamp must be non-negative")


# PID memory between control steps: (error integral, previous error).
PidMemory = tuple[float, float]

PID_MEMORY_ZERO: PidMemory = (0.0, 0.0)


def _clamp(x: float, lo: float, hi: float) -> float:
    return min(max(x, lo), hi)


def step(
    state: SimState,
    command: float,
    params: PhysicsParams,
    limit_deg: float = 5.0,
) -> tuple[SimState, bool]:
    """Advance one control period under a held command.

    Returns the post-step state and whether it is fallen. The command is a
    velocity-command unit; base_accel = clamp(command_gain*command,
    +/-accel_limit) is held constant across all substeps of the period.
    """
    if not math.isfinite(command):
        raise ValueError(f"command must be finite, got {command!r}")
    base_accel = _clamp(
        params.command_gain * command, -params.accel_limit, params.accel_limit
    )
    g_over_l = params.gravity / params.pendulum_length
    dt = params.substep
    pitch = state.pitch
    rate = state.pitch_rate
    pos = state.base_pos
    vel = state.base_vel
    for _ in range(params.substeps):
        accel = (
            g_over_l * math.sin(pitch)
            - (base_accel / params.pendulum_length) * math.cos(pitch)
            - params.pitch_damping * rate
        )
        rate = rate + accel * dt
        pitch = pitch + rate * dt
        vel = vel + base_accel * dt
        pos = pos + vel * dt
    new_state = SimState(
        pitch=pitch,
        pitch_rate=rate,
        base_pos=pos,
        base_vel=vel,
        sim_time=state.sim_time + params.control_period,
    )
    return new_state, is_fallen(new_state, limit_deg)


def is_fallen(state: SimState, limit_deg: float = 5.0) -> bool:
    """True when |pitch| is at or beyond the limit. The boundary counts."""
    if limit_deg <= 0:
        raise ValueError("limit_deg must be positive")
    return abs(state.pitch) >= math.radians(limit_deg)


def reset(params: PhysicsParams, rng) -> SimState:
    """Start an episode: upright rest plus a small uniform pitch draw.

    The one-second settling wait before the first sensor read is simulated
    from the upright rest state, where it cannot move the plant; the jitter
    draw is applied afterwards so that episode difficulty is set by
    init_pitch_jitter alone. Episode time starts at zero.
    """
    state = SimState()
    settle_steps = round(1.0 / params.control_period)
    for _ in range(settle_steps):
        state, _ = step(state, 0.0, params, limit_deg=90.0)
    pitch = rng.uniform(-params.init_pitch_jitter, params.init_pitch_jitter)
    return SimState(
        pitch=pitch,
        pitch_rate=state.pitch_rate,
        base_pos=state.base_pos,
        base_vel=state.base_vel,
        sim_time=0.0,
    )


def pid_action(
    state: SimState,
    gains: PidGains,
    memory: PidMemory,
    params: PhysicsParams,
) -> tuple[float, PidMemory]:
    """One discrete PID evaluation; returns (command, updated memory)."""
    error = 0.0 - math.degrees(state.pitch)
    integral, prev_error = memory
    integral = _clamp(
        integral + error * params.control_period,
        -gains.integral_clamp,
        gains.integral_clamp,
    )
    derivative = (error - prev_error) / params.control_period
    command = gains.kp * error + gains.ki * integral + gains.kd * derivative
    return command, (integral, error)
