"""Gate-level expansion of a personality into a (optionally footer-gated) netlist.

Structure mirrors a classic two-level array: one complement-generating
inverter per input, one AND macro per product row (don't-care literals
produce no wire, so fan-in shrinks), one OR macro per output. The gated
variant hangs each array off a footer sleep transistor through a shared
virtual-ground net; gating is footer-only, there is no header option.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

from .device import FooterConfig
from .errors import ModeError, SynthesisError
from .pla import Bits, PlaPersonality

CONVENTIONAL = "conventional"
POWER_GATED = "power-gated"

ACTIVE = "active"
SLEEP = "sleep"

GATE_KINDS = ("input-inverter", "and-macro", "or-macro")

# Each macro contributes fan_in * w_unit to its domain's aggregate width
# (series stacks approximated by fan-in count).
DEFAULT_W_UNIT = 1.0


@dataclass(frozen=True)
class GateInstance:
    name: str
    kind: str  # one of GATE_KINDS
    inputs: tuple[str, ...]
    output: str
    sleep_domain: str | None = None

    @property
    def fan_in(self) -> int:
        return len(self.inputs)


@dataclass(frozen=True)
class SleepDomain:
    name: str
    footer: FooterConfig
    members: tuple[str, ...]  # gate names
    virtual_ground: str  # net name
    sleep_signal_state: str = ACTIVE

    def __post_init__(self):
        if self.sleep_signal_state not in (ACTIVE, SLEEP):
            raise ValueError(f"bad sleep_signal_state {self.sleep_signal_state!r}")


@dataclass(frozen=True)
class GatedNetlist:
    variant: str
    gates: tuple[GateInstance, ...]
    nets: tuple[str, ...]
    sleep_domains: tuple[SleepDomain, ...]
    input_nets: tuple[str, ...]
    output_nets: tuple[str, ...]
    product_nets: tuple[str, ...]

    def __post_init__(self):
        if self.variant not in (CONVENTIONAL, POWER_GATED):
            raise ValueError(f"bad variant {self.variant!r}")
        if self.variant == CONVENTIONAL and self.sleep_domains:
            raise ValueError("conventional netlist must have no sleep domains")
        if self.variant == POWER_GATED and not self.sleep_domains:
            raise ValueError("power-gated netlist must have at least one sleep domain")
        declared = set(self.nets)
        for gate in self.gates:
            for pin in (*gate.inputs, gate.output):
                if pin not in declared:
                    raise ValueError(f"gate {gate.name} references undeclared net {pin!r}")
        members = {g.name: g.sleep_domain for g in self.gates}
        for domain in self.sleep_domains:
            if domain.virtual_ground not in declared:
                raise ValueError(f"domain {domain.name} virtual ground net undeclared")
            for member in domain.members:
                if members.get(member) != domain.name:
                    raise ValueError(
                        f"gate {member} does not reference back to domain {domain.name}"
                    )

    @property
    def mode(self) -> str | None:
        """Common sleep-signal state, None for conventional netlists."""
        if not self.sleep_domains:
            return None
        return self.sleep_domains[0].sleep_signal_state

    def domain(self, name: str) -> SleepDomain:
        for d in self.sleep_domains:
            if d.name == name:
                return d
        raise KeyError(name)


def _complement_net(name: str) -> str:
    return f"{name}_bar"


def synthesize(
    p: PlaPersonality,
    variant: str = CONVENTIONAL,
    footer_template: FooterConfig | None = None,
    w_unit: float = DEFAULT_W_UNIT,
    domains: str = "per-array",
) -> GatedNetlist:
    """Expand a personality into gates; optionally add footer sleep domains.

    The gated variant places one footer per array ('per-array': AND array
    and OR array separately, matching the two-footer arrangement) or one
    shared footer ('shared'). Domain w_circuit aggregates member fan-in
    times w_unit; an array with zero aggregate width gets no domain.
    """
    if variant not in (CONVENTIONAL, POWER_GATED):
        raise SynthesisError(f"unknown variant {variant!r}")
    if variant == POWER_GATED and footer_template is None:
        raise SynthesisError("power-gated synthesis requires a footer template")
    if domains not in ("per-array", "shared"):
        raise SynthesisError(f"unknown domain granularity {domains!r}")

    inputs = p.input_names
    outputs = p.output_names
    complements = tuple(_complement_net(name) for name in inputs)
    products = tuple(f"p{i}" for i in range(p.num_products))

    inverters = [
        GateInstance(name=f"inv_{name}", kind="input-inverter", inputs=(name,), output=comp)
        for name, comp in zip(inputs, complements)
    ]
    and_gates = []
    for i, cube in enumerate(p.and_plane):
        pins = []
        for j, lit in enumerate(cube):
            if lit == "1":
                pins.append(inputs[j])
            elif lit == "0":
                pins.append(complements[j])
        and_gates.append(
            GateInstance(name=f"and_{products[i]}", kind="and-macro",
                         inputs=tuple(pins), output=products[i])
        )
    or_gates = []
    for j, out in enumerate(outputs):
        feeding = tuple(products[i] for i in range(p.num_products) if p.or_plane[i][j] == "1")
        or_gates.append(
            GateInstance(name=f"or_{out}", kind="or-macro", inputs=feeding, output=out)
        )

    nets = list(inputs) + list(complements) + list(products) + list(outputs)
    gates = inverters + and_gates + or_gates
    sleep_domains: list[SleepDomain] = []

    if variant == POWER_GATED:
        if domains == "per-array":
            groups = [("and_array", and_gates), ("or_array", or_gates)]
        else:
            groups = [("core", and_gates + or_gates)]
        for domain_name, group in groups:
            width = sum(g.fan_in for g in group) * w_unit
            if width <= 0:
                continue
            vgnd_net = f"vgnd_{domain_name}"
            nets.append(vgnd_net)
            member_names = tuple(g.name for g in group if g.fan_in > 0)
            gates = [
                replace(g, sleep_domain=domain_name)
                if g.name in set(member_names) else g
                for g in gates
            ]
            sleep_domains.append(
                SleepDomain(
                    name=domain_name,
                    footer=replace(footer_template, w_circuit=width),
                    members=member_names,
                    virtual_ground=vgnd_net,
                    sleep_signal_state=ACTIVE,
                )
            )
        if not sleep_domains:
            raise SynthesisError(
                "nothing to gate: every macro has zero fan-in, no sleep domain possible"
            )

    return GatedNetlist(
        variant=variant,
        gates=tuple(gates),
        nets=tuple(nets),
        sleep_domains=tuple(sleep_domains),
        input_nets=inputs,
        output_nets=outputs,
        product_nets=products,
    )


def set_mode(n: GatedNetlist, mode: str) -> GatedNetlist:
    """Return a copy with every sleep domain in the given mode."""
    if mode not in (ACTIVE, SLEEP):
        raise ModeError(f"unknown mode {mode!r}")
    if n.variant != POWER_GATED:
        raise ModeError("conventional netlist has no sleep domains to switch")
    new_domains = tuple(replace(d, sleep_signal_state=mode) for d in n.sleep_domains)
    return replace(n, sleep_domains=new_domains)


def evaluate_netlist(n: GatedNetlist, v: Bits) -> Bits:
    """Gate-level logic evaluation: and-macro = conjunction of its inputs,
    or-macro = disjunction (empty conjunction true, empty disjunction false)."""
    if len(v) != len(n.input_nets):
        raise ValueError(f"vector length {len(v)} != input count {len(n.input_nets)}")
    value: dict[str, bool] = dict(zip(n.input_nets, (bool(b) for b in v)))
    for gate in n.gates:  # synthesis order is topological
        if gate.kind == "input-inverter":
            value[gate.output] = not value[gate.inputs[0]]
        elif gate.kind == "and-macro":
            value[gate.output] = all(value[pin] for pin in gate.inputs)
        else:
            value[gate.output] = any(value[pin] for pin in gate.inputs)
    return tuple(int(value[out]) for out in n.output_nets)


def _device_dict(d) -> dict:
    return {"i0": d.i0, "w_over_l": d.w_over_l, "vth": d.vth, "eta": d.eta, "ss": d.ss}


def to_json_dict(n: GatedNetlist) -> dict:
    """JSON-ready netlist document (schema documented in the README)."""
    return {
        "variant": n.variant,
        "nets": list(n.nets),
        "inputs": list(n.input_nets),
        "outputs": list(n.output_nets),
        "products": list(n.product_nets),
        "gates": [
            {
                "name": g.name,
                "kind": g.kind,
                "inputs": list(g.inputs),
                "output": g.output,
                "sleep_domain": g.sleep_domain,
            }
            for g in n.gates
        ],
        "sleep_domains": [
            {
                "name": d.name,
                "mode": d.sleep_signal_state,
                "virtual_ground": d.virtual_ground,
                "members": list(d.members),
                "footer": {
                    "w_circuit": d.footer.w_circuit,
                    "w_footer": d.footer.w_footer,
                    "vg": d.footer.vg,
                    "circuit": _device_dict(d.footer.circuit),
                    "footer": _device_dict(d.footer.footer),
                },
            }
            for d in n.sleep_domains
        ],
    }


def save_json(n: GatedNetlist, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_json_dict(n), indent=2) + "\n", encoding="utf-8")
