"""Paths to the data files shipped with the package."""

from importlib import resources
from pathlib import Path


def _data_path(name: str) -> Path:
    return Path(str(resources.files("plagate").joinpath("data", name)))


def reference_table_path() -> Path:
    """Measured per-line power comparison table (pW) for the bundled
    three-input array; the calibration source for the golden tests."""
    return _data_path("reference_power_table.csv")


def example_pla_path() -> Path:
    """Three-input array with all eight minterms feeding one output."""
    return _data_path("minterms3.pla")


def default_config_path() -> Path:
    """The default device card, written out as a key=value file."""
    return _data_path("device_default.cfg")
