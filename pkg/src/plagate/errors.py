"""Exception types shared across the toolkit.

Everything user-facing derives from PlagateError so the CLI can map the
whole family to exit code 2 (user/config error) and keep exit code 1 for
genuine internal failures.
"""


class PlagateError(Exception):
    """Base class for all toolkit errors."""


class PlaParseError(PlagateError):
    """Malformed .pla text. Carries the 1-based line number when known."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class CapacityError(PlagateError):
    """Input space too large to enumerate exhaustively."""


class ParameterError(PlagateError):
    """A device/supply/config parameter violates its invariant.

    The message always names the offending key.
    """


class NoSolutionError(PlagateError):
    """Root bracket has no sign change; reports both endpoint residuals."""

    def __init__(self, message: str, residual_low: float, residual_high: float):
        super().__init__(
            f"{message} (residual at low end {residual_low:.6g} A, "
            f"at high end {residual_high:.6g} A)"
        )
        self.residual_low = residual_low
        self.residual_high = residual_high


class SynthesisError(PlagateError):
    """Netlist synthesis cannot proceed (e.g. gated variant without a footer)."""


class ModeError(PlagateError):
    """Sleep-mode operation requested on a netlist without sleep domains."""


class CalibrationError(PlagateError):
    """Reference table unusable for calibration (e.g. an all-zero line)."""


class ReportShapeError(PlagateError):
    """Two power reports do not cover identical (vector, line) keys."""


class StabilityError(PlagateError):
    """Requested timestep violates the explicit-integration stability guard.

    Carries the largest admissible timestep so callers can retry.
    """

    def __init__(self, message: str, max_timestep: float):
        super().__init__(f"{message} (maximum admissible timestep {max_timestep:.6g} s)")
        self.max_timestep = max_timestep


class WakeupTimeoutError(PlagateError):
    """Virtual ground never crossed the wake-up threshold within the cap."""

    def __init__(self, message: str, final_voltage: float):
        super().__init__(f"{message} (final voltage {final_voltage:.6g} V)")
        self.final_voltage = final_voltage
