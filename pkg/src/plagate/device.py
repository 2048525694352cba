"""Transistor-level analytics for footer-gated logic.

Scope: subthreshold leakage of a weak-inversion device, the virtual-ground
voltage of a footer sleep switch balanced against the logic block it gates,
the resulting sleep/active leakage ratio, and the average-power split into
dynamic, short-circuit, and leakage components. All quantities are SI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoSolutionError, ParameterError

BISECTION_MAX_ITERATIONS = 200
BISECTION_BRACKET_TOL = 1e-12  # volts


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterError(message)


@dataclass(frozen=True)
class DeviceParams:
    """Constants of one transistor family.

    i0        current scale [A]
    w_over_l  width/length ratio (dimensionless)
    vth       threshold voltage [V]
    eta       drain-induced barrier lowering coefficient (dimensionless)
    ss        subthreshold slope [V/decade]
    """

    i0: float
    w_over_l: float
    vth: float
    eta: float
    ss: float

    def __post_init__(self):
        _require(self.i0 > 0, "i0 must be positive")
        _require(self.w_over_l > 0, "w_over_l must be positive")
        _require(self.vth >= 0, "vth must be non-negative")
        _require(0 < self.eta < 1, "eta must be positive and below 1")
        _require(self.ss > 0, "ss must be positive")


@dataclass(frozen=True)
class SupplyConfig:
    """Supply, clocking, and activity figures for the dynamic-power term.

    vdd    supply voltage [V]
    f_clk  clock frequency [Hz]
    c_load load capacitance [F]
    alpha  0->1 switching probability
    i_sc   short-circuit current [A]
    """

    vdd: float
    f_clk: float
    c_load: float
    alpha: float
    i_sc: float

    def __post_init__(self):
        _require(self.vdd > 0, "vdd must be positive")
        _require(self.f_clk >= 0, "f_clk must be non-negative")
        _require(self.c_load >= 0, "c_load must be non-negative")
        _require(0 <= self.alpha <= 1, "alpha must be within [0, 1]")
        _require(self.i_sc >= 0, "i_sc must be non-negative")


@dataclass(frozen=True)
class FooterConfig:
    """A logic block and the footer switch that gates its ground path.

    w_circuit aggregates the gated block's effective width; w_footer is the
    switch width (same unit). vg is the footer gate bias during sleep
    analysis and must keep the footer in weak inversion (vg < footer.vth).
    """

    w_circuit: float
    w_footer: float
    vg: float
    circuit: DeviceParams
    footer: DeviceParams

    def __post_init__(self):
        _require(self.w_circuit > 0, "w_circuit must be positive")
        _require(self.w_footer > 0, "w_footer must be positive")
        _require(
            self.vg < self.footer.vth,
            "vg must stay below the footer vth (weak inversion)",
        )


@dataclass(frozen=True)
class VirtualGround:
    """Closed-form virtual-ground solution: raw value plus the physical
    companion clamped to [0, vdd] that downstream consumers use."""

    raw: float
    clamped: float


@dataclass(frozen=True)
class PowerBreakdown:
    dynamic: float  # alpha * C * Vdd^2 * f  [W]
    short_circuit: float  # I_sc * Vdd  [W]
    leakage: float  # I_leak * Vdd  [W]

    @property
    def total(self) -> float:
        return self.dynamic + self.short_circuit + self.leakage


def subthreshold_leakage(d: DeviceParams, vg: float, vds: float) -> float:
    """Weak-inversion drain current: i0 * (W/L) * 10^((vg - vth + eta*vds)/ss).

    One decade per ss of combined gate/drain overdrive.
    """
    if vds < 0:
        raise ParameterError("vds must be non-negative")
    exponent = (vg - d.vth + d.eta * vds) / d.ss
    return d.i0 * d.w_over_l * 10.0**exponent


def virtual_ground_closed_form(f: FooterConfig, vdd: float) -> VirtualGround:
    """Closed-form sleep-mode virtual-ground voltage.

    V_gnd = (-vg + ss*log10(w_circuit/w_footer) + (vthF - vthC + eta*vdd)) / (2*eta)

    The balance assumes circuit and footer share ss and eta; the footer's
    values are used. Strong asymmetry can push the raw value outside
    [0, vdd]; the clamped companion is the physical node voltage.
    """
    _require(vdd > 0, "vdd must be positive")
    ss = f.footer.ss
    eta = f.footer.eta
    raw = (
        -f.vg
        + ss * math.log10(f.w_circuit / f.w_footer)
        + (f.footer.vth - f.circuit.vth + eta * vdd)
    ) / (2.0 * eta)
    return VirtualGround(raw=raw, clamped=min(max(raw, 0.0), vdd))


def _balance_residual(f: FooterConfig, vdd: float, vgnd: float) -> float:
    """Circuit leakage minus footer leakage at a candidate virtual ground.

    Circuit side: lumped off-transistor at gate 0 with vds = vdd - vgnd.
    Footer side: gate vg with vds = vgnd. Shares the footer's i0/ss/eta so
    the root coincides with the closed form.
    """
    ss = f.footer.ss
    eta = f.footer.eta
    i0 = f.footer.i0
    circuit_leak = i0 * f.w_circuit * 10.0 ** ((-f.circuit.vth + eta * (vdd - vgnd)) / ss)
    footer_leak = i0 * f.w_footer * 10.0 ** ((f.vg - f.footer.vth + eta * vgnd) / ss)
    return circuit_leak - footer_leak


def virtual_ground_numeric(f: FooterConfig, vdd: float) -> float:
    """Virtual ground by bisection of the leakage balance on [0, vdd].

    Independent oracle for the closed form: converges the bracket to
    BISECTION_BRACKET_TOL volts. Raises NoSolutionError when the bracket
    endpoints have the same residual sign (root outside [0, vdd]).
    """
    _require(vdd > 0, "vdd must be positive")
    lo, hi = 0.0, vdd
    r_lo = _balance_residual(f, vdd, lo)
    r_hi = _balance_residual(f, vdd, hi)
    if r_lo == 0.0:
        return lo
    if r_hi == 0.0:
        return hi
    if (r_lo > 0) == (r_hi > 0):
        raise NoSolutionError("leakage balance has no root within [0, vdd]", r_lo, r_hi)
    for _ in range(BISECTION_MAX_ITERATIONS):
        mid = 0.5 * (lo + hi)
        r_mid = _balance_residual(f, vdd, mid)
        if r_mid == 0.0:
            return mid
        if (r_mid > 0) == (r_lo > 0):
            lo, r_lo = mid, r_mid
        else:
            hi = mid
        if hi - lo <= BISECTION_BRACKET_TOL:
            break
    return 0.5 * (lo + hi)


def leakage_saving_ratio(f: FooterConfig, vdd: float, vgnd: float) -> float:
    """Sleep/active leakage current ratio: 10^(-eta*(vdd - vgnd)/ss).

    In (0, 1], monotone increasing in vgnd, so a higher sleep-mode virtual
    ground means the ratio is closer to 1 and LESS leakage is saved; the
    saving is maximal at vgnd = 0.
    """
    _require(vdd > 0, "vdd must be positive")
    if not 0.0 <= vgnd <= vdd:
        raise ParameterError(f"vgnd must lie within [0, vdd], got {vgnd!r}")
    return 10.0 ** (-(f.footer.eta * (vdd - vgnd)) / f.footer.ss)


def average_power(s: SupplyConfig, i_leak: float) -> PowerBreakdown:
    """Average power split: alpha*C*Vdd^2*f + I_sc*Vdd + I_leak*Vdd."""
    if i_leak < 0:
        raise ParameterError("i_leak must be non-negative")
    return PowerBreakdown(
        dynamic=s.alpha * s.c_load * s.vdd**2 * s.f_clk,
        short_circuit=s.i_sc * s.vdd,
        leakage=i_leak * s.vdd,
    )
