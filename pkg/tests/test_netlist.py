import json
from dataclasses import replace

import pytest

from plagate import (
    GatedNetlist,
    GateInstance,
    ModeError,
    SynthesisError,
    evaluate,
    evaluate_netlist,
    parse_pla,
    set_mode,
    synthesize,
)
from plagate.netlist import ACTIVE, CONVENTIONAL, POWER_GATED, SLEEP, to_json_dict
from plagate.pla import all_vectors


@pytest.fixture()
def footer_template(default_footer):
    return default_footer


def gate_kinds(netlist):
    counts = {}
    for g in netlist.gates:
        counts[g.kind] = counts.get(g.kind, 0) + 1
    return counts


def test_demo_gate_counts(demo_personality, footer_template):
    gated = synthesize(demo_personality, POWER_GATED, footer_template=footer_template)
    assert gate_kinds(gated) == {"input-inverter": 3, "and-macro": 8, "or-macro": 1}
    assert len(gated.sleep_domains) == 2
    assert {d.name for d in gated.sleep_domains} == {"and_array", "or_array"}


def test_gate_counts_scale_with_shape(corpus, footer_template):
    for path, p in corpus:
        n = synthesize(p)
        counts = gate_kinds(n)
        assert counts.get("input-inverter", 0) == p.num_inputs, path.name
        assert counts.get("and-macro", 0) == p.num_products, path.name
        assert counts.get("or-macro", 0) == p.num_outputs, path.name
        assert len(n.product_nets) == p.num_products


def test_empty_product_list_conventional():
    p = parse_pla(".i 2\n.o 1\n.e\n")
    n = synthesize(p)
    assert gate_kinds(n) == {"input-inverter": 2, "or-macro": 1}
    assert n.sleep_domains == ()
    for v in all_vectors(2):
        assert evaluate_netlist(n, v) == (0,)


def test_empty_product_list_gated_has_nothing_to_gate(footer_template):
    p = parse_pla(".i 2\n.o 1\n.e\n")
    with pytest.raises(SynthesisError, match="nothing to gate"):
        synthesize(p, POWER_GATED, footer_template=footer_template)


def test_gated_requires_footer_template(demo_personality):
    with pytest.raises(SynthesisError, match="footer template"):
        synthesize(demo_personality, POWER_GATED)


def test_dont_care_literals_produce_no_wire():
    p = parse_pla(".i 3\n.o 1\n1-0 1\n.e\n")
    n = synthesize(p)
    and_gate = next(g for g in n.gates if g.kind == "and-macro")
    assert and_gate.inputs == ("A", "C_bar")
    assert and_gate.fan_in == 2


def test_and_fan_in_counts_non_dash_literals(corpus):
    for path, p in corpus:
        n = synthesize(p)
        ands = [g for g in n.gates if g.kind == "and-macro"]
        for gate, cube in zip(ands, p.and_plane):
            assert gate.fan_in == sum(c != "-" for c in cube), (path.name, cube)


def test_or_fan_in_counts_feeding_products(demo_personality):
    n = synthesize(demo_personality)
    or_gate = next(g for g in n.gates if g.kind == "or-macro")
    assert or_gate.fan_in == 8
    assert or_gate.inputs == n.product_nets


def test_conventional_vs_gated_structural_diff(demo_personality, footer_template):
    conv = synthesize(demo_personality, CONVENTIONAL)
    gated = synthesize(demo_personality, POWER_GATED, footer_template=footer_template)
    strip = lambda nl: {(g.name, g.kind, g.inputs, g.output) for g in nl.gates}
    assert strip(conv) == strip(gated)
    vgnd_nets = set(gated.nets) - set(conv.nets)
    assert vgnd_nets == {"vgnd_and_array", "vgnd_or_array"}
    assert conv.sleep_domains == ()


def test_domain_width_aggregates_member_fan_in(demo_personality, footer_template):
    gated = synthesize(demo_personality, POWER_GATED, footer_template=footer_template,
                       w_unit=2.5)
    widths = {d.name: d.footer.w_circuit for d in gated.sleep_domains}
    # 8 products x 3 literals, OR fan-in 8
    assert widths == {"and_array": pytest.approx(24 * 2.5), "or_array": pytest.approx(8 * 2.5)}


def test_shared_domain_granularity(demo_personality, footer_template):
    gated = synthesize(demo_personality, POWER_GATED, footer_template=footer_template,
                       domains="shared")
    assert len(gated.sleep_domains) == 1
    assert gated.sleep_domains[0].footer.w_circuit == pytest.approx(32.0)


def test_set_mode_round_trip(demo_personality, footer_template):
    gated = synthesize(demo_personality, POWER_GATED, footer_template=footer_template)
    assert gated.mode == ACTIVE
    asleep = set_mode(gated, SLEEP)
    assert all(d.sleep_signal_state == SLEEP for d in asleep.sleep_domains)
    awake = set_mode(asleep, ACTIVE)
    assert awake == gated
    # logic content untouched by the round trip
    for v in all_vectors(3):
        assert evaluate_netlist(awake, v) == evaluate_netlist(gated, v)


def test_set_mode_rejects_conventional(demo_personality):
    with pytest.raises(ModeError, match="no sleep domains"):
        set_mode(synthesize(demo_personality), SLEEP)


def test_set_mode_rejects_unknown_mode(demo_personality, footer_template):
    gated = synthesize(demo_personality, POWER_GATED, footer_template=footer_template)
    with pytest.raises(ModeError, match="unknown mode"):
        set_mode(gated, "hibernate")


def test_functional_preservation_over_corpus(corpus, footer_template):
    for path, p in corpus:
        conv = synthesize(p, CONVENTIONAL)
        gated = synthesize(p, POWER_GATED, footer_template=footer_template)
        for v in all_vectors(p.num_inputs):
            expected = evaluate(p, v)
            assert evaluate_netlist(conv, v) == expected, (path.name, v)
            assert evaluate_netlist(gated, v) == expected, (path.name, v)


def test_evaluate_netlist_length_check(demo_personality):
    n = synthesize(demo_personality)
    with pytest.raises(ValueError, match="length"):
        evaluate_netlist(n, (1, 0))


def test_netlist_validates_pin_references(demo_personality):
    n = synthesize(demo_personality)
    bad_gate = GateInstance(name="ghost", kind="and-macro", inputs=("nowhere",), output="p0")
    with pytest.raises(ValueError, match="undeclared net"):
        GatedNetlist(
            variant=n.variant,
            gates=n.gates + (bad_gate,),
            nets=n.nets,
            sleep_domains=n.sleep_domains,
            input_nets=n.input_nets,
            output_nets=n.output_nets,
            product_nets=n.product_nets,
        )


def test_netlist_validates_domain_membership(demo_personality, footer_template):
    gated = synthesize(demo_personality, POWER_GATED, footer_template=footer_template)
    # drop the domain tag from one member gate
    broken_gates = tuple(
        replace(g, sleep_domain=None) if g.name == "and_p0" else g for g in gated.gates
    )
    with pytest.raises(ValueError, match="does not reference back"):
        replace(gated, gates=broken_gates)


def test_variant_domain_consistency(demo_personality, footer_template):
    conv = synthesize(demo_personality)
    gated = synthesize(demo_personality, POWER_GATED, footer_template=footer_template)
    with pytest.raises(ValueError, match="at least one sleep domain"):
        replace(gated, sleep_domains=())
    with pytest.raises(ValueError, match="no sleep domains"):
        replace(conv, variant=POWER_GATED, sleep_domains=()) and None
    with pytest.raises(ValueError):
        replace(conv, sleep_domains=gated.sleep_domains)


def test_json_export_schema(demo_personality, footer_template, tmp_path):
    gated = synthesize(demo_personality, POWER_GATED, footer_template=footer_template)
    doc = to_json_dict(gated)
    assert doc["variant"] == POWER_GATED
    assert set(doc) == {
        "variant", "nets", "inputs", "outputs", "products", "gates", "sleep_domains",
    }
    assert len(doc["gates"]) == len(gated.gates)
    for domain in doc["sleep_domains"]:
        assert set(domain["members"]) <= {g["name"] for g in doc["gates"]}
        assert domain["footer"]["w_circuit"] > 0
    # document must survive a JSON round trip unchanged
    assert json.loads(json.dumps(doc)) == doc

    from plagate.netlist import save_json

    out = tmp_path / "netlist.json"
    save_json(gated, out)
    assert json.loads(out.read_text()) == doc
