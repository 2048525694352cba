"""Fixed-timestep step-response simulation of single-pole RC nodes.

The gated design adds the footer's ON resistance in series with the drive
path, so its nodes settle later than the conventional design's; wake-up is
the discharge of the virtual-ground node through the footer after a
sleep->active transition. Explicit Euler with a hard stability guard:
single-pole systems need nothing stiffer, and the guard keeps the error
bounded and first-order.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

from .device import FooterConfig, virtual_ground_closed_form
from .errors import ModeError, StabilityError, WakeupTimeoutError
from .netlist import SLEEP, SleepDomain

# Footer ON resistance model: r_unit / width (linear 1/W).
DEFAULT_R_UNIT = 10e3  # ohm * unit-width

# Hard guards for the explicit update.
MIN_STEPS_PER_TAU = 10
MIN_STEPS_PER_DURATION = 10

WAKEUP_STEPS_PER_TAU = 1000
WAKEUP_DURATION_TAUS = 20.0


@dataclass(frozen=True)
class RcStage:
    """One node: drive resistance (plus footer series resistance when the
    path is gated), node capacitance, and the step levels."""

    drive_resistance: float  # ohm
    capacitance: float  # F
    v_start: float  # V
    v_target: float  # V
    footer_resistance: float = 0.0  # ohm; 0 means no footer in the path

    def __post_init__(self):
        if self.drive_resistance <= 0:
            raise ValueError("drive_resistance must be positive")
        if self.footer_resistance < 0:
            raise ValueError("footer_resistance must be non-negative")
        if self.capacitance <= 0:
            raise ValueError("capacitance must be positive")

    @property
    def total_resistance(self) -> float:
        return self.drive_resistance + self.footer_resistance

    @property
    def time_constant(self) -> float:
        return self.total_resistance * self.capacitance


@dataclass(frozen=True)
class Waveform:
    node: str
    timestep: float  # s
    samples: tuple[float, ...]  # V, sample k at t = k * timestep

    def __post_init__(self):
        if self.timestep <= 0:
            raise ValueError("timestep must be positive")
        if not self.samples:
            raise ValueError("waveform must hold at least one sample")
        if not all(math.isfinite(s) for s in self.samples):
            raise ValueError("waveform samples must be finite")

    def times(self) -> tuple[float, ...]:
        return tuple(k * self.timestep for k in range(len(self.samples)))

    def final(self) -> float:
        return self.samples[-1]

    def first_crossing(self, level: float) -> float | None:
        """Linearly interpolated time at which the waveform first reaches
        `level`, or None if it never does."""
        prev = self.samples[0]
        if prev == level:
            return 0.0
        for k, value in enumerate(self.samples[1:], start=1):
            if (prev - level) * (value - level) <= 0 and value != prev:
                frac = (prev - level) / (prev - value)
                return (k - 1 + frac) * self.timestep
            prev = value
        return None

    def csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["time", "voltage"])
        for k, value in enumerate(self.samples):
            writer.writerow([repr(k * self.timestep), repr(value)])
        return buf.getvalue()

    def to_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.csv_text(), encoding="utf-8")


def max_stable_timestep(stage: RcStage, duration: float) -> float:
    return min(duration / MIN_STEPS_PER_DURATION, stage.time_constant / MIN_STEPS_PER_TAU)


def simulate_step(stage: RcStage, duration: float, timestep: float, node: str = "out") -> Waveform:
    """Integrate dV/dt = (V_target - V) / (R_total * C) explicitly.

    Refuses timesteps above max_stable_timestep (never silently proceeds);
    under the guard the approach to target is monotone with no overshoot.
    """
    if duration <= 0:
        raise ValueError("duration must be positive")
    if timestep <= 0:
        raise ValueError("timestep must be positive")
    limit = max_stable_timestep(stage, duration)
    if timestep > limit:
        raise StabilityError(
            f"timestep {timestep:.6g} s violates the stability guard", limit
        )
    tau = stage.time_constant
    steps = round(duration / timestep)
    v = stage.v_start
    samples = [v]
    for _ in range(steps):
        v += timestep * (stage.v_target - v) / tau
        samples.append(v)
    return Waveform(node=node, timestep=timestep, samples=tuple(samples))


def exact_step_response(stage: RcStage, t: float) -> float:
    """Analytic exponential the simulator approximates; test oracle."""
    tau = stage.time_constant
    return stage.v_target + (stage.v_start - stage.v_target) * math.exp(-t / tau)


def footer_resistance(w_footer: float, r_unit: float = DEFAULT_R_UNIT) -> float:
    """Footer ON resistance: r_unit / w_footer."""
    if w_footer <= 0:
        raise ValueError("w_footer must be positive")
    if r_unit <= 0:
        raise ValueError("r_unit must be positive")
    return r_unit / w_footer


def wakeup_latency(
    domain: SleepDomain | FooterConfig,
    vdd: float,
    node_capacitance: float,
    threshold_fraction: float,
    r_unit: float = DEFAULT_R_UNIT,
    timestep: float | None = None,
    max_duration: float | None = None,
) -> float:
    """Time for the virtual ground to fall below threshold_fraction times its
    sleep-mode voltage once the footer turns back on.

    Accepts a SleepDomain (which must be in sleep mode) or a bare
    FooterConfig. The node starts at the clamped closed-form virtual-ground
    voltage and discharges through the footer resistance; the crossing time
    is interpolated between samples. Analytically the latency is
    -RC*ln(threshold_fraction).
    """
    if not 0 < threshold_fraction < 1:
        raise ValueError("threshold_fraction must lie strictly between 0 and 1")
    if isinstance(domain, SleepDomain):
        if domain.sleep_signal_state != SLEEP:
            raise ModeError("wake-up latency is defined for a domain in sleep mode")
        cfg = domain.footer
    else:
        cfg = domain
    if node_capacitance <= 0:
        raise ValueError("node_capacitance must be positive")

    vgnd = virtual_ground_closed_form(cfg, vdd).clamped
    if vgnd == 0.0:
        return 0.0  # node already at ground; nothing to discharge

    r = footer_resistance(cfg.w_footer, r_unit)
    tau = r * node_capacitance
    h = timestep if timestep is not None else tau / WAKEUP_STEPS_PER_TAU
    duration = max_duration if max_duration is not None else WAKEUP_DURATION_TAUS * tau

    stage = RcStage(
        drive_resistance=r,
        capacitance=node_capacitance,
        v_start=vgnd,
        v_target=0.0,
    )
    wf = simulate_step(stage, duration, h, node="vgnd")
    crossing = wf.first_crossing(threshold_fraction * vgnd)
    if crossing is None:
        raise WakeupTimeoutError(
            f"virtual ground never fell below {threshold_fraction:.6g} * {vgnd:.6g} V "
            f"within {duration:.6g} s",
            wf.final(),
        )
    return crossing
