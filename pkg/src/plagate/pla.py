"""Two-level logic: personality matrices, .pla parsing, and evaluation.

A personality programs an AND plane (one row per product term, entries
'1' = use input as-is, '0' = use its complement, '-' = input unused) and
an OR plane (one row per product term, '1' where the product feeds that
output). All values are immutable; operations are pure functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import CapacityError, PlaParseError

Bits = tuple[int, ...]

# Exhaustive enumeration guard (2^24 vectors is the most we will sweep).
MAX_ENUM_INPUTS = 24

_AND_CHARS = frozenset("01-")
_OR_CHARS = frozenset("01")


def _default_input_names(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(chr(ord("A") + i) for i in range(n))
    return tuple(f"x{i}" for i in range(n))


def _default_output_names(m: int) -> tuple[str, ...]:
    return tuple(f"f{j}" for j in range(m))


@dataclass(frozen=True)
class PlaPersonality:
    """AND/OR plane bit matrices plus input/output signal names."""

    num_inputs: int
    num_outputs: int
    and_plane: tuple[str, ...]  # one cube string per product, chars in {0,1,-}
    or_plane: tuple[str, ...]  # one 0/1 string per product, one char per output
    input_names: tuple[str, ...] = ()
    output_names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.num_inputs < 1:
            raise ValueError("num_inputs must be >= 1")
        if self.num_outputs < 1:
            raise ValueError("num_outputs must be >= 1")
        if len(self.and_plane) != len(self.or_plane):
            raise ValueError("and_plane and or_plane must have the same row count")
        for row in self.and_plane:
            if len(row) != self.num_inputs or not set(row) <= _AND_CHARS:
                raise ValueError(f"bad AND-plane row {row!r}")
        for row in self.or_plane:
            if len(row) != self.num_outputs or not set(row) <= _OR_CHARS:
                raise ValueError(f"bad OR-plane row {row!r}")
        if not self.input_names:
            object.__setattr__(self, "input_names", _default_input_names(self.num_inputs))
        if not self.output_names:
            object.__setattr__(self, "output_names", _default_output_names(self.num_outputs))
        if len(self.input_names) != self.num_inputs:
            raise ValueError("input_names length must equal num_inputs")
        if len(self.output_names) != self.num_outputs:
            raise ValueError("output_names length must equal num_outputs")

    @property
    def num_products(self) -> int:
        return len(self.and_plane)


def parse_pla(text: str) -> PlaPersonality:
    """Parse Berkeley-style .pla text (type-f cube semantics only).

    Accepted directives: .i, .o, .p (count must match the rows), .ilb,
    .ob, .type f, .e/.end. Comment lines start with '#'. Raises
    PlaParseError naming the offending line.
    """
    num_inputs: int | None = None
    num_outputs: int | None = None
    declared_products: int | None = None
    input_names: tuple[str, ...] = ()
    output_names: tuple[str, ...] = ()
    and_rows: list[str] = []
    or_rows: list[str] = []
    ended = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ended:
            raise PlaParseError("content after .e", line_no)
        if line.startswith("."):
            parts = line.split()
            directive = parts[0]
            if directive == ".i":
                num_inputs = _parse_count(parts, ".i", line_no)
            elif directive == ".o":
                num_outputs = _parse_count(parts, ".o", line_no)
            elif directive == ".p":
                declared_products = _parse_count(parts, ".p", line_no, minimum=0)
            elif directive == ".ilb":
                input_names = tuple(parts[1:])
            elif directive == ".ob":
                output_names = tuple(parts[1:])
            elif directive == ".type":
                if parts[1:] != ["f"]:
                    raise PlaParseError(f"unsupported .type {' '.join(parts[1:])!r}", line_no)
            elif directive in (".e", ".end"):
                ended = True
            else:
                raise PlaParseError(f"unknown directive {directive!r}", line_no)
            continue

        # Product row: input cube, blank run, output part.
        if num_inputs is None or num_outputs is None:
            raise PlaParseError("product row before .i/.o declarations", line_no)
        fields = line.split()
        if len(fields) != 2:
            raise PlaParseError(f"expected 'cube outputs', got {line!r}", line_no)
        cube, outs = fields
        if len(cube) != num_inputs:
            raise PlaParseError(
                f"cube width {len(cube)} != declared .i {num_inputs}", line_no
            )
        if not set(cube) <= _AND_CHARS:
            raise PlaParseError(f"cube {cube!r} has characters outside 0/1/-", line_no)
        if len(outs) != num_outputs:
            raise PlaParseError(
                f"output width {len(outs)} != declared .o {num_outputs}", line_no
            )
        if not set(outs) <= _OR_CHARS:
            raise PlaParseError(f"output part {outs!r} has characters outside 0/1", line_no)
        and_rows.append(cube)
        or_rows.append(outs)

    if num_inputs is None:
        raise PlaParseError("missing .i directive")
    if num_outputs is None:
        raise PlaParseError("missing .o directive")
    if input_names and len(input_names) != num_inputs:
        raise PlaParseError(f".ilb names {len(input_names)} != .i {num_inputs}")
    if output_names and len(output_names) != num_outputs:
        raise PlaParseError(f".ob names {len(output_names)} != .o {num_outputs}")
    if declared_products is not None and declared_products != len(and_rows):
        raise PlaParseError(
            f".p declares {declared_products} products but {len(and_rows)} rows present"
        )

    return PlaPersonality(
        num_inputs=num_inputs,
        num_outputs=num_outputs,
        and_plane=tuple(and_rows),
        or_plane=tuple(or_rows),
        input_names=input_names,
        output_names=output_names,
    )


def _parse_count(parts: list[str], directive: str, line_no: int, minimum: int = 1) -> int:
    if len(parts) != 2:
        raise PlaParseError(f"{directive} takes exactly one argument", line_no)
    try:
        value = int(parts[1])
    except ValueError:
        raise PlaParseError(f"{directive} argument {parts[1]!r} is not an integer", line_no)
    if value < minimum:
        raise PlaParseError(f"{directive} must be >= {minimum}, got {value}", line_no)
    return value


def serialize(p: PlaPersonality) -> str:
    """Emit .pla text that parses back to an identical personality."""
    lines = [
        f".i {p.num_inputs}",
        f".o {p.num_outputs}",
        ".ilb " + " ".join(p.input_names),
        ".ob " + " ".join(p.output_names),
        f".p {p.num_products}",
    ]
    lines += [f"{cube} {outs}" for cube, outs in zip(p.and_plane, p.or_plane)]
    lines.append(".e")
    return "\n".join(lines) + "\n"


def load_pla(path) -> PlaPersonality:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_pla(fh.read())


def _check_vector(p: PlaPersonality, v: Bits) -> None:
    if len(v) != p.num_inputs:
        raise ValueError(
            f"input vector length {len(v)} != personality num_inputs {p.num_inputs}"
        )


def product_active(cube: str, v: Bits) -> bool:
    """True iff every non-don't-care literal of the cube matches v."""
    for lit, bit in zip(cube, v):
        if lit == "-":
            continue
        if (lit == "1") != bool(bit):
            return False
    return True


def evaluate(p: PlaPersonality, v: Bits) -> Bits:
    """Sum-of-products evaluation: output j is 1 iff some product row
    feeding output j is active under v."""
    _check_vector(p, v)
    out = [0] * p.num_outputs
    for cube, orrow in zip(p.and_plane, p.or_plane):
        if product_active(cube, v):
            for j, flag in enumerate(orrow):
                if flag == "1":
                    out[j] = 1
    return tuple(out)


def all_vectors(n: int) -> "itertools.product":
    """All input vectors of width n in binary ascending order (bit 0 = MSB)."""
    if n > MAX_ENUM_INPUTS:
        raise CapacityError(f"cannot enumerate 2^{n} vectors (guard: n <= {MAX_ENUM_INPUTS})")
    return itertools.product((0, 1), repeat=n)


def expand_minterms(p: PlaPersonality, output_index: int) -> tuple[Bits, ...]:
    """All vectors for which the given output evaluates to 1, ascending."""
    if not 0 <= output_index < p.num_outputs:
        raise ValueError(f"output_index {output_index} out of range")
    return tuple(v for v in all_vectors(p.num_inputs) if evaluate(p, v)[output_index])


def bits_from_string(s: str) -> Bits:
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"vector {s!r} must be a nonempty string of 0/1")
    return tuple(int(c) for c in s)


def bits_to_string(v: Bits) -> str:
    return "".join("1" if b else "0" for b in v)
