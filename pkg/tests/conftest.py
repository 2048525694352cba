import itertools
import random
from pathlib import Path

import pytest

from plagate import DeviceParams, FooterConfig, bundled, calibrate, load_pla, load_report_csv
from plagate.config import DEFAULTS, footer_config, supply_config

CORPUS_DIR = Path(__file__).parent / "corpus"


def corpus_paths():
    return sorted(CORPUS_DIR.glob("*.pla"))


@pytest.fixture(scope="session")
def corpus():
    return [(path, load_pla(path)) for path in corpus_paths()]


@pytest.fixture(scope="session")
def reference_report():
    return load_report_csv(bundled.reference_table_path())


@pytest.fixture(scope="session")
def reference_calibration(reference_report):
    return calibrate(reference_report)


@pytest.fixture(scope="session")
def demo_personality():
    return load_pla(bundled.example_pla_path())


@pytest.fixture()
def default_values():
    return dict(DEFAULTS)


@pytest.fixture()
def default_footer(default_values):
    return footer_config(default_values)


@pytest.fixture()
def default_supply(default_values):
    return supply_config(default_values)


# --- independent sum-of-products oracle -------------------------------------
# Expands every cube into its explicit minterm set first, then answers by
# set membership; shares no code path with plagate.pla.evaluate.

def cube_minterm_set(cube):
    dash_positions = [i for i, c in enumerate(cube) if c == "-"]
    base = [1 if c == "1" else 0 for c in cube]
    minterms = set()
    for fill in itertools.product((0, 1), repeat=len(dash_positions)):
        v = list(base)
        for pos, bit in zip(dash_positions, fill):
            v[pos] = bit
        minterms.add(tuple(v))
    return minterms


def oracle_minterm_sets(p):
    cube_sets = [cube_minterm_set(cube) for cube in p.and_plane]
    per_output = []
    for j in range(p.num_outputs):
        covered = set()
        for cube_set, orrow in zip(cube_sets, p.or_plane):
            if orrow[j] == "1":
                covered |= cube_set
        per_output.append(covered)
    return per_output


def oracle_evaluate(p, v):
    sets = oracle_minterm_sets(p)
    return tuple(int(tuple(v) in s) for s in sets)


# --- randomized footer cases -------------------------------------------------
# Draws parameter sets whose leakage balance has a root inside [0, vdd];
# the bracket check recomputes both leakage sides locally so it stays
# independent of the closed form under test.

def _balance_sign_change(fc, vdd):
    ss, eta, i0 = fc.footer.ss, fc.footer.eta, fc.footer.i0

    def residual(v):
        circuit = i0 * fc.w_circuit * 10 ** ((-fc.circuit.vth + eta * (vdd - v)) / ss)
        footer = i0 * fc.w_footer * 10 ** ((fc.vg - fc.footer.vth + eta * v) / ss)
        return circuit - footer

    lo, hi = residual(0.0), residual(vdd)
    return (lo > 0) != (hi > 0)


def random_footer_cases(count, seed=20250810):
    """(FooterConfig, vdd) pairs with an in-bracket virtual-ground solution
    and enough vg headroom for finite-difference probing."""
    rng = random.Random(seed)
    cases = []
    while len(cases) < count:
        eta = rng.uniform(0.05, 0.3)
        ss = rng.uniform(0.06, 0.15)
        vdd = rng.uniform(0.8, 5.0)
        vth_c = rng.uniform(0.2, 0.6)
        vth_f = rng.uniform(0.3, 0.7)
        i0 = 10 ** rng.uniform(-9.0, -6.0)
        fc = FooterConfig(
            w_circuit=rng.uniform(0.5, 50.0),
            w_footer=rng.uniform(0.5, 50.0),
            vg=rng.uniform(0.0, 0.8 * vth_f - 1e-4),
            circuit=DeviceParams(i0, rng.uniform(0.5, 50.0), vth_c, eta, ss),
            footer=DeviceParams(i0, rng.uniform(0.5, 50.0), vth_f, eta, ss),
        )
        if _balance_sign_change(fc, vdd):
            cases.append((fc, vdd))
    return cases
