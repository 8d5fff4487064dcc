import math

import numpy as np
import pytest
from conftest import random_density_matrix, random_product_state
from hypothesis import given, settings
from hypothesis import strategies as st

from qrgitf.errors import ConfigurationError, DomainError
from qrgitf.measures import (
    MeasureId,
    chsh_direct,
    chsh_max_closed,
    closed_form,
    discord_mid_closed,
    evaluate,
    min_gqd_closed,
    negativity_closed,
    oracle_chsh,
    oracle_discord,
    oracle_mid,
    oracle_min_gqd,
    oracle_negativity,
    oracle_quantum_deficit,
    quantum_deficit_closed,
)
from qrgitf.measures.oracles import decohered_weights
from qrgitf.rgflow import flow, ground_state

# independently computed at g = 1 (alpha^2 = (2 + sqrt 2) / 4)
S_G1_BITS = 0.60087603669285610084
S_G1_NATS = 0.41649553069968745143
CHSH_G1 = 2.4494897427831780982
NE_G1 = 0.35355339059327376220
LN2 = math.log(2.0)

SAT_ORDERED = flow(0.5, 20)
SAT_DISORDERED = flow(1.5, 20)


def test_closed_examples():
    assert negativity_closed(0.0) == 0.5
    assert negativity_closed(1.0) == pytest.approx(NE_G1, abs=1e-15)
    assert negativity_closed(SAT_DISORDERED) == 0.0
    assert discord_mid_closed(0.0) == pytest.approx(1.0, abs=1e-15)
    assert discord_mid_closed(1.0) == pytest.approx(S_G1_BITS, abs=1e-14)
    assert discord_mid_closed(SAT_DISORDERED) == 0.0
    assert min_gqd_closed(0.0) == 0.5
    assert min_gqd_closed(1.0) == pytest.approx(0.25, abs=1e-15)
    assert min_gqd_closed(SAT_DISORDERED) == 0.0
    assert quantum_deficit_closed(0.0) == pytest.approx(LN2, abs=1e-15)
    assert quantum_deficit_closed(1.0) == pytest.approx(S_G1_NATS, abs=1e-14)
    assert quantum_deficit_closed(SAT_DISORDERED) == 0.0
    assert chsh_max_closed(0.0) == pytest.approx(2 * math.sqrt(2), abs=1e-15)
    assert chsh_max_closed(1.0) == pytest.approx(CHSH_G1, abs=1e-14)
    assert chsh_max_closed(SAT_DISORDERED) == 2.0


@pytest.mark.parametrize("m", list(MeasureId))
def test_saturated_limits_match_nearby_unsaturated(m):
    # just inside the saturation threshold the formulas already sit on the limits
    inside_lo, inside_hi = flow(0.5, 9), flow(1.5, 10)
    assert closed_form(m, SAT_ORDERED) == pytest.approx(closed_form(m, inside_lo), abs=1e-12)
    assert closed_form(m, SAT_DISORDERED) == pytest.approx(closed_form(m, inside_hi), abs=1e-12)


@pytest.mark.parametrize("m", list(MeasureId))
def test_closed_form_array_matches_scalar(m):
    g = np.linspace(0, 3, 13)
    arr = closed_form(m, g)
    assert arr.shape == g.shape
    np.testing.assert_allclose(arr, [closed_form(m, float(x)) for x in g], rtol=0, atol=0)


@pytest.mark.parametrize("m", list(MeasureId))
def test_closed_forms_strictly_decreasing(m):
    g = np.linspace(0, 5, 2001)
    v = closed_form(m, g)
    assert np.all(np.diff(v) < 0)
    h = 1e-5
    assert abs(closed_form(m, h) - closed_form(m, 0.0)) / h < 1e-4


def test_closed_form_rejects_bad_input():
    for bad in (-1.0, math.nan, math.inf):
        with pytest.raises(DomainError):
            closed_form("neg", bad)
    with pytest.raises(DomainError):
        MeasureId.parse("entropy")


def test_measure_parsing_and_units():
    assert MeasureId.parse("Negativity") is MeasureId.NEGATIVITY
    assert MeasureId.parse("discord") is MeasureId.QD
    assert MeasureId.parse("QDEFICIT") is MeasureId.QDEFICIT
    assert MeasureId.parse("bell") is MeasureId.CHSH
    v = evaluate("qde", 0.0)
    assert v.units == "nats" and v.value == pytest.approx(LN2)
    assert evaluate("qd", 1.0).units == "bits"
    assert evaluate("chsh", 1.0).units == "dimensionless"


@given(st.floats(0.0, 50.0))
def test_cross_identities(g):
    ne = closed_form("neg", g)
    assert closed_form("min", g) == pytest.approx(2 * ne * ne, abs=1e-12)
    assert closed_form("gqd", g) == pytest.approx(2 * ne * ne, abs=1e-12)
    assert closed_form("chsh", g) == pytest.approx(2 * math.sqrt(1 + 4 * ne * ne), abs=1e-12)
    assert closed_form("qde", g) == pytest.approx(LN2 * closed_form("qd", g), abs=1e-12)
    assert closed_form("chsh", g) >= 2.0


def test_oracle_examples_bell(bell):
    assert oracle_negativity(bell) == pytest.approx(0.5, abs=1e-12)
    assert oracle_discord(bell) == pytest.approx(1.0, abs=1e-9)
    assert oracle_mid(bell) == pytest.approx(1.0, abs=1e-12)
    assert oracle_min_gqd(bell) == pytest.approx((0.5, 0.5), abs=1e-12)
    assert oracle_quantum_deficit(bell) == pytest.approx(LN2, abs=1e-12)
    assert oracle_chsh(bell) == pytest.approx(2 * math.sqrt(2), abs=1e-12)
    assert chsh_direct(bell) == pytest.approx(2 * math.sqrt(2), abs=1e-6)


def test_oracle_examples_product(product00):
    assert oracle_negativity(product00) == 0.0
    assert oracle_discord(product00) == pytest.approx(0.0, abs=1e-12)
    assert oracle_mid(product00) == pytest.approx(0.0, abs=1e-12)
    assert oracle_min_gqd(product00) == pytest.approx((0.0, 0.0), abs=1e-12)
    assert oracle_quantum_deficit(product00) == pytest.approx(0.0, abs=1e-12)
    assert oracle_chsh(product00) == pytest.approx(2.0, abs=1e-12)


def test_oracle_examples_classical_diagonal():
    rho = np.diag([0.4, 0.1, 0.2, 0.3]).astype(complex)
    assert oracle_mid(rho) == pytest.approx(0.0, abs=1e-12)
    assert oracle_quantum_deficit(rho) == pytest.approx(0.0, abs=1e-12)
    assert oracle_discord(rho) == pytest.approx(0.0, abs=1e-9)
    np.testing.assert_allclose(sorted(decohered_weights(rho)), [0.1, 0.2, 0.3, 0.4], atol=1e-12)


def test_oracle_examples_ground_state_g1():
    rho = ground_state(1.0).rho
    assert oracle_negativity(rho) == pytest.approx(NE_G1, abs=1e-12)
    assert oracle_discord(rho) == pytest.approx(S_G1_BITS, abs=1e-6)
    assert oracle_mid(rho) == pytest.approx(S_G1_BITS, abs=1e-12)
    assert oracle_min_gqd(rho) == pytest.approx((0.25, 0.25), abs=1e-12)
    assert oracle_quantum_deficit(rho) == pytest.approx(S_G1_NATS, abs=1e-12)
    assert oracle_chsh(rho) == pytest.approx(CHSH_G1, abs=1e-12)
    assert chsh_direct(rho) == pytest.approx(CHSH_G1, abs=1e-4)


def test_discord_resolution_floor():
    with pytest.raises(ConfigurationError):
        oracle_discord(ground_state(1.0).rho, resolution=7)


def _projected_distances(rho, dirs):
    """||rho - Pi_n(rho)||^2 (Hilbert-Schmidt) for projective measurements on A along each n."""
    sig = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]])
    out = []
    for n in dirs:
        ns = np.einsum("i,iab->ab", n, sig)
        projs = [np.kron(0.5 * (np.eye(2) + s * ns), np.eye(2)) for s in (1, -1)]
        dephased = sum(p @ rho @ p for p in projs)
        out.append(np.sum(np.abs(rho - dephased) ** 2))
    return np.array(out)


def _sphere(k):
    t, p = np.meshgrid(np.linspace(0, np.pi, k), np.linspace(0, 2 * np.pi, 2 * k), indexing="ij")
    return np.stack([np.sin(t) * np.cos(p), np.sin(t) * np.sin(p), np.cos(t)], -1).reshape(-1, 3)


def test_min_gqd_against_brute_force_distances(rng):
    dirs = _sphere(90)
    for _ in range(4):
        rho = random_density_matrix(rng)
        mn, gq = oracle_min_gqd(rho)
        d = _projected_distances(rho, dirs)
        # GQD is the closest classical-quantum state, reached by dephasing along the optimum
        assert gq == pytest.approx(d.min(), abs=2e-3)
        assert gq <= d.min() + 1e-12
        # MIN dephases in the eigenbasis of rho_A
        rho_a = np.einsum("ijkj->ik", rho.reshape(2, 2, 2, 2))
        a = np.real([np.trace(rho_a @ s) for s in ([[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]])])
        assert mn == pytest.approx(_projected_distances(rho, [a / np.linalg.norm(a)])[0], abs=1e-12)


def test_chsh_direct_matches_horodecki_on_random_states(rng):
    for _ in range(3):
        rho = random_density_matrix(rng)
        assert chsh_direct(rho) == pytest.approx(oracle_chsh(rho), abs=1e-4)


def test_discord_on_product_states_vanishes(rng):
    for _ in range(3):
        assert oracle_discord(random_product_state(rng), resolution=16) == pytest.approx(0.0, abs=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 2.5))
def test_oracles_match_closed_forms(g):
    rho = ground_state(g).rho
    mn, gq = oracle_min_gqd(rho)
    assert oracle_negativity(rho) == pytest.approx(closed_form("neg", g), abs=1e-9)
    assert oracle_mid(rho) == pytest.approx(closed_form("mid", g), abs=1e-9)
    assert mn == pytest.approx(closed_form("min", g), abs=1e-9)
    assert gq == pytest.approx(closed_form("gqd", g), abs=1e-9)
    assert oracle_quantum_deficit(rho) == pytest.approx(closed_form("qde", g), abs=1e-9)
    assert oracle_chsh(rho) == pytest.approx(closed_form("chsh", g), abs=1e-9)


@pytest.mark.parametrize("g", [0.0, 0.37, 1.0, 2.5])
def test_discord_oracle_matches_closed_form(g):
    assert oracle_discord(ground_state(g).rho) == pytest.approx(closed_form("qd", g), abs=1e-6)
