"""Per-vector, per-line power reports for conventional vs footer-gated arrays.

The measurement model attributes power to the input-line drivers: a line
consumes nothing while its bit is 0 and a calibrated base figure while its
bit is 1; the gated design scales that base by a per-line factor (from a
reference table, or derived by applying the sleep/active leakage ratio to
the leakage component of the driver power).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from statistics import fmean, median

from .device import (
    FooterConfig,
    SupplyConfig,
    average_power,
    leakage_saving_ratio,
    subthreshold_leakage,
    virtual_ground_closed_form,
)
from .errors import CalibrationError, ReportShapeError
from .netlist import GatedNetlist
from .pla import Bits, all_vectors, bits_from_string, bits_to_string

REPORT_COLUMNS = ("vector", "line", "conventional_pw", "gated_pw", "saving_fraction")

# A ratio residual farther than this many spreads from the line median is
# an outlier (spread = median absolute deviation; a plain standard
# deviation gets masked by the outlier itself).
OUTLIER_SPREAD_FACTOR = 3.0


@dataclass(frozen=True)
class PowerRow:
    vector: str
    line: str
    conventional_pw: float
    gated_pw: float

    def __post_init__(self):
        if self.conventional_pw < 0 or self.gated_pw < 0:
            raise ValueError(f"negative power in row ({self.vector}, {self.line})")
        if self.gated_pw > self.conventional_pw:
            raise ValueError(
                f"gated power exceeds conventional in row ({self.vector}, {self.line})"
            )

    @property
    def key(self) -> tuple[str, str]:
        return (self.vector, self.line)

    @property
    def saving_fraction(self) -> float:
        if self.conventional_pw > 0:
            return 1.0 - self.gated_pw / self.conventional_pw
        return 0.0


@dataclass(frozen=True)
class PowerReport:
    rows: tuple[PowerRow, ...]

    def __post_init__(self):
        keys = [r.key for r in self.rows]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate (vector, line) keys in report")

    def keys(self) -> tuple[tuple[str, str], ...]:
        return tuple(r.key for r in self.rows)

    def get(self, vector: str, line: str) -> PowerRow:
        for r in self.rows:
            if r.key == (vector, line):
                return r
        raise KeyError((vector, line))

    def lines(self) -> tuple[str, ...]:
        seen: list[str] = []
        for r in self.rows:
            if r.line not in seen:
                seen.append(r.line)
        return tuple(seen)

    def csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for r in self.rows:
            writer.writerow(
                [r.vector, r.line, repr(r.conventional_pw), repr(r.gated_pw),
                 repr(r.saving_fraction)]
            )
        return buf.getvalue()

    def to_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.csv_text(), encoding="utf-8")

    def to_json_dict(self) -> dict:
        return {
            "rows": [
                {
                    "vector": r.vector,
                    "line": r.line,
                    "conventional_pw": r.conventional_pw,
                    "gated_pw": r.gated_pw,
                    "saving_fraction": r.saving_fraction,
                }
                for r in self.rows
            ]
        }


def report_from_csv_text(text: str) -> PowerReport:
    """Read a report CSV; the saving_fraction column is optional (recomputed)."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header[:4]) != REPORT_COLUMNS[:4]:
        raise ValueError(f"report CSV must start with columns {REPORT_COLUMNS[:4]}")
    rows = [
        PowerRow(
            vector=rec[0],
            line=rec[1],
            conventional_pw=float(rec[2]),
            gated_pw=float(rec[3]),
        )
        for rec in reader
        if rec
    ]
    return PowerReport(rows=tuple(rows))


def load_report_csv(path: str | Path) -> PowerReport:
    return report_from_csv_text(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class LineCalibration:
    """Per-line base driver power at logic-high [pW] and gated scaling in (0, 1]."""

    base_pw: dict[str, float]
    gated_scale: dict[str, float]

    def __post_init__(self):
        for line, base in self.base_pw.items():
            if base < 0:
                raise CalibrationError(f"line {line}: base power must be non-negative")
        for line, scale in self.gated_scale.items():
            if not 0 < scale <= 1:
                raise CalibrationError(f"line {line}: gated scaling must be in (0, 1]")

    def lines(self) -> tuple[str, ...]:
        return tuple(self.base_pw)

    def ungated(self) -> "LineCalibration":
        """Same bases with scaling 1 everywhere (the conventional design)."""
        return LineCalibration(
            base_pw=dict(self.base_pw),
            gated_scale={line: 1.0 for line in self.base_pw},
        )


@dataclass(frozen=True)
class Residual:
    vector: str
    line: str
    column: str  # "conventional" | "gated"
    reference_pw: float
    model_pw: float

    @property
    def rel_error(self) -> float:
        return (self.model_pw - self.reference_pw) / self.reference_pw


@dataclass(frozen=True)
class CalibrationResult:
    calibration: LineCalibration
    residuals: tuple[Residual, ...]
    outliers: tuple[tuple[str, str], ...]  # (vector, line) keys excluded from scaling


def calibrate(reference: PowerReport) -> CalibrationResult:
    """Fit per-line base power and gated scaling to a reference table.

    Base = mean of the line's nonzero conventional entries. Scaling = mean
    of gated/conventional over rows where both are nonzero, after dropping
    ratio outliers (farther than OUTLIER_SPREAD_FACTOR times the median
    absolute deviation from the line median). Residuals cover every
    nonzero entry, outliers included.
    """
    base_pw: dict[str, float] = {}
    gated_scale: dict[str, float] = {}
    outliers: list[tuple[str, str]] = []
    kept_ratios: dict[str, list[float]] = {}

    for line in reference.lines():
        line_rows = [r for r in reference.rows if r.line == line]
        conv = [r.conventional_pw for r in line_rows if r.conventional_pw > 0]
        if not conv:
            raise CalibrationError(f"line {line} has no nonzero conventional entries")
        base_pw[line] = fmean(conv)

        ratio_rows = [r for r in line_rows if r.conventional_pw > 0 and r.gated_pw > 0]
        if not ratio_rows:
            raise CalibrationError(f"line {line} has no rows with both entries nonzero")
        ratios = [r.gated_pw / r.conventional_pw for r in ratio_rows]
        med = median(ratios)
        mad = median(abs(x - med) for x in ratios)
        kept = []
        for row, ratio in zip(ratio_rows, ratios):
            if abs(ratio - med) > OUTLIER_SPREAD_FACTOR * mad:
                outliers.append(row.key)
            else:
                kept.append(ratio)
        if not kept:  # degenerate; keep everything rather than fail
            kept = ratios
        kept_ratios[line] = kept
        gated_scale[line] = fmean(kept)

    calibration = LineCalibration(base_pw=base_pw, gated_scale=gated_scale)

    residuals = []
    for r in reference.rows:
        if r.conventional_pw > 0:
            residuals.append(
                Residual(r.vector, r.line, "conventional", r.conventional_pw,
                         base_pw[r.line])
            )
        if r.gated_pw > 0:
            residuals.append(
                Residual(r.vector, r.line, "gated", r.gated_pw,
                         base_pw[r.line] * gated_scale[r.line])
            )
    return CalibrationResult(
        calibration=calibration,
        residuals=tuple(residuals),
        outliers=tuple(outliers),
    )


def derive_calibration(
    lines: tuple[str, ...], supply: SupplyConfig, footer: FooterConfig
) -> LineCalibration:
    """Build a calibration from the device model instead of a reference table.

    Base = total driver power (dynamic + short-circuit + leakage) in pW;
    gated scaling keeps dynamic and short-circuit components and multiplies
    the leakage component by the sleep/active ratio at the clamped
    virtual-ground voltage.
    """
    i_leak = subthreshold_leakage(footer.circuit, vg=0.0, vds=supply.vdd)
    breakdown = average_power(supply, i_leak)
    vgnd = virtual_ground_closed_form(footer, supply.vdd).clamped
    ratio = leakage_saving_ratio(footer, supply.vdd, vgnd)
    gated_total = breakdown.dynamic + breakdown.short_circuit + breakdown.leakage * ratio
    scale = gated_total / breakdown.total
    base = breakdown.total * 1e12  # W -> pW
    return LineCalibration(
        base_pw={line: base for line in lines},
        gated_scale={line: scale for line in lines},
    )


def _as_bits(n: GatedNetlist, v: Bits | str) -> Bits:
    bits = bits_from_string(v) if isinstance(v, str) else tuple(v)
    if len(bits) != len(n.input_nets):
        raise ValueError(f"vector length {len(bits)} != input count {len(n.input_nets)}")
    return bits


def line_power(n: GatedNetlist, v: Bits | str, cal: LineCalibration) -> tuple[PowerRow, ...]:
    """One row per input line for a single vector: zero while the line's bit
    is 0, calibrated base (and base*scale for the gated design) while 1."""
    bits = _as_bits(n, v)
    vector = bits_to_string(bits)
    rows = []
    for line, bit in zip(n.input_nets, bits):
        if line not in cal.base_pw or line not in cal.gated_scale:
            raise CalibrationError(f"calibration does not cover line {line!r}")
        if bit:
            conv = cal.base_pw[line]
            gated = conv * cal.gated_scale[line]
        else:
            conv = gated = 0.0
        rows.append(PowerRow(vector=vector, line=line, conventional_pw=conv, gated_pw=gated))
    return tuple(rows)


def sweep_all_vectors(n: GatedNetlist, cal: LineCalibration) -> PowerReport:
    """All vectors in binary ascending order, lines in declaration order."""
    rows: list[PowerRow] = []
    for v in all_vectors(len(n.input_nets)):
        rows.extend(line_power(n, v, cal))
    return PowerReport(rows=tuple(rows))


@dataclass(frozen=True)
class LineSaving:
    mean_saving: float
    min_saving: float
    max_saving: float
    rows: int  # rows with nonzero conventional power


@dataclass(frozen=True)
class ComparisonSummary:
    per_line: dict[str, LineSaving]
    total_saving: float

    def to_json_dict(self) -> dict:
        return {
            "per_line": {
                line: {
                    "mean_saving": s.mean_saving,
                    "min_saving": s.min_saving,
                    "max_saving": s.max_saving,
                    "rows": s.rows,
                }
                for line, s in self.per_line.items()
            },
            "total_saving": self.total_saving,
        }

    def json_text(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def compare_designs(conventional: PowerReport, gated: PowerReport) -> ComparisonSummary:
    """Per-line mean/min/max saving and the overall total.

    Saving per key = 1 - gated_pw(gated report) / conventional_pw
    (conventional report), over rows with nonzero conventional power; both
    reports must cover identical keys in identical order.
    """
    if conventional.keys() != gated.keys():
        raise ReportShapeError("reports do not cover identical (vector, line) keys")
    savings: dict[str, list[float]] = {}
    sum_conv = 0.0
    sum_gated = 0.0
    for conv_row, gated_row in zip(conventional.rows, gated.rows):
        sum_conv += conv_row.conventional_pw
        sum_gated += gated_row.gated_pw
        savings.setdefault(conv_row.line, [])
        if conv_row.conventional_pw > 0:
            savings[conv_row.line].append(1.0 - gated_row.gated_pw / conv_row.conventional_pw)
    per_line = {}
    for line, values in savings.items():
        if values:
            per_line[line] = LineSaving(fmean(values), min(values), max(values), len(values))
        else:
            per_line[line] = LineSaving(0.0, 0.0, 0.0, 0)
    total = 1.0 - sum_gated / sum_conv if sum_conv > 0 else 0.0
    return ComparisonSummary(per_line=per_line, total_saving=total)
