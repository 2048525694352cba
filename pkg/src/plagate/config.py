"""Flat key=value config files and the default device card.

Format: one `key = value` per line, '#' comments, blank lines ignored,
all values SI floats. Unknown keys are rejected so typos fail fast.
"""

from __future__ import annotations

from pathlib import Path

from .device import DeviceParams, FooterConfig, SupplyConfig
from .errors import ParameterError

# Representative card used when a key is absent: low-vth logic gated by a
# high-vth footer, +5 V logic-high supply.
DEFAULTS: dict[str, float] = {
    "i0": 100e-9,  # A
    "vth_circuit": 0.3,  # V
    "vth_footer": 0.5,  # V
    "eta": 0.15,
    "ss": 0.1,  # V/decade
    "vdd": 5.0,  # V
    "vg": 0.0,  # V, footer gate bias during sleep analysis
    "w_circuit": 10.0,  # aggregate gated width, unit widths
    "w_footer": 1.0,
    "f_clk": 1e6,  # Hz
    "c_load": 10e-15,  # F
    "alpha": 0.5,  # 0->1 switching probability
    "i_sc": 0.0,  # A
    "r_unit": 10e3,  # ohm * unit-width (footer R = r_unit / w_footer)
    "r_drive": 10e3,  # ohm, conventional drive resistance
    "c_node": 100e-15,  # F, simulated node capacitance
}


def parse_kv_text(text: str, source: str = "<config>") -> dict[str, float]:
    values: dict[str, float] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"{source}:{line_no}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in DEFAULTS:
            raise ParameterError(f"{source}:{line_no}: unknown config key {key!r}")
        try:
            values[key] = float(value.strip())
        except ValueError:
            raise ParameterError(f"{source}:{line_no}: {key} value {value.strip()!r} is not a number")
    return values


def load_kv_file(path: str | Path) -> dict[str, float]:
    path = Path(path)
    return parse_kv_text(path.read_text(encoding="utf-8"), source=str(path))


def resolve(config_path: str | Path | None = None, overrides: dict[str, float] | None = None) -> dict[str, float]:
    """Defaults, overlaid by the config file, overlaid by explicit overrides."""
    values = dict(DEFAULTS)
    if config_path is not None:
        values.update(load_kv_file(config_path))
    for key, value in (overrides or {}).items():
        if key not in DEFAULTS:
            raise ParameterError(f"unknown config key {key!r}")
        values[key] = value
    return values


def footer_config(values: dict[str, float]) -> FooterConfig:
    circuit = DeviceParams(
        i0=values["i0"],
        w_over_l=values["w_circuit"],
        vth=values["vth_circuit"],
        eta=values["eta"],
        ss=values["ss"],
    )
    footer = DeviceParams(
        i0=values["i0"],
        w_over_l=values["w_footer"],
        vth=values["vth_footer"],
        eta=values["eta"],
        ss=values["ss"],
    )
    return FooterConfig(
        w_circuit=values["w_circuit"],
        w_footer=values["w_footer"],
        vg=values["vg"],
        circuit=circuit,
        footer=footer,
    )


def supply_config(values: dict[str, float]) -> SupplyConfig:
    return SupplyConfig(
        vdd=values["vdd"],
        f_clk=values["f_clk"],
        c_load=values["c_load"],
        alpha=values["alpha"],
        i_sc=values["i_sc"],
    )
