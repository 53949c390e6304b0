import math

import numpy as np
import pytest

from multiphoton import (
    DegenerateTap,
    EvenChainLength,
    NetworkConfig,
    average_bounds,
    average_fidelities,
    build_coupling_matrix,
    chain_spectrum,
    delta_r,
    delta_t,
    fock_fidelities,
    leakage_sum,
    mode_couplings,
    perturbative_matrix_elements,
    propagator,
    reflection_bound,
    swap_time,
    transmission_bound,
)

TRANSMIT = NetworkConfig(N=7, m=3, kappa=1.0, g0=0.01, j0=0.0)
REFLECT = TRANSMIT.replace(j0=0.1)
GRID = np.round(np.arange(1, 21) * 0.001, 6)


def tan2_sum(N, z):
    # g_k / eps_k = g0 sqrt(2/(N+1)) sin(x) / (2 cos(x)) with x = k pi/(N+1)
    return sum(math.tan(k * math.pi / (N + 1)) ** 2 for k in range(1, z))


def test_tan2_oracle_value():
    assert tan2_sum(7, 4) == pytest.approx(7.0, rel=1e-13)


@pytest.mark.parametrize("N", [3, 5, 7, 11])
def test_leakage_sum_against_tan2_oracle(N):
    g0 = 0.013
    expected = g0**2 * (2 / (N + 1)) * tan2_sum(N, (N + 1) // 2) / 4
    assert leakage_sum(TRANSMIT.replace(N=N, m=1, g0=g0)) == pytest.approx(expected, rel=1e-12)


def test_delta_t_examples():
    assert delta_t(TRANSMIT.replace(g0=0.0), 100.0) == 0.0
    assert 0 <= delta_t(TRANSMIT) <= 2 * 7 * 0.01**2 / 16
    config = NetworkConfig(N=3, g0=0.01)
    tau = swap_time(config)
    g1 = 0.01 * math.sqrt(0.5) * math.sin(math.pi / 4)
    eps1 = math.sqrt(2)
    expected = g1**2 / eps1**2 * (1 - math.cos(eps1 * tau))
    assert delta_t(config) == pytest.approx(expected, rel=1e-12)


def test_delta_t_needs_odd_chain():
    with pytest.raises(EvenChainLength):
        delta_t(NetworkConfig(N=6, g0=0.01), 10.0)


@pytest.mark.parametrize("g0,n,bound", [(0.01, 2, 7.0e-4), (0.005, 5, 4.375e-4)])
def test_transmission_bound_values(g0, n, bound):
    rep = transmission_bound(TRANSMIT.replace(g0=g0), n)
    assert rep.upper_bound == pytest.approx(bound, rel=1e-12)
    assert 0 <= rep.infidelity_estimate <= rep.upper_bound + 1e-12
    assert rep.infidelity_estimate == pytest.approx(4 * n * rep.delta)
    assert transmission_bound(TRANSMIT.replace(g0=g0), 2 * n).upper_bound == 2 * rep.upper_bound


def test_transmission_bound_scales_with_g0_squared():
    a = transmission_bound(TRANSMIT.replace(g0=0.01), 3).upper_bound
    b = transmission_bound(TRANSMIT.replace(g0=0.005), 3).upper_bound
    assert a == pytest.approx(4 * b, rel=1e-12)


@pytest.mark.parametrize("t", np.linspace(0, 3000, 37))
def test_estimate_below_bound_pointwise_in_time(t):
    for n in (1, 4):
        rep = transmission_bound(TRANSMIT, n, t)
        assert 0 <= rep.infidelity_estimate <= rep.upper_bound + 1e-12
        rep = reflection_bound(REFLECT, n, t)
        assert 0 <= rep.infidelity_estimate <= rep.upper_bound + 1e-12


def test_delta_r_examples():
    assert delta_r(REFLECT, 0.0) == 0.0
    assert delta_r(REFLECT, math.pi / 0.05) == pytest.approx(0.1**2, rel=1e-12)
    tau = swap_time(REFLECT)
    expected = 0.005**2 / (2 * 0.05**2) * (1 - math.cos(-0.05 * tau))
    assert delta_r(REFLECT) == pytest.approx(expected, rel=1e-12)
    assert 0 <= delta_r(REFLECT) <= 0.01


def test_delta_r_needs_tap():
    with pytest.raises(DegenerateTap):
        delta_r(REFLECT.replace(m=2))
    with pytest.raises(DegenerateTap):
        delta_r(REFLECT.replace(j0=0.0))
    with pytest.raises(EvenChainLength):
        delta_r(REFLECT.replace(N=8))


def test_reflection_bound_values():
    assert reflection_bound(REFLECT, 2).upper_bound == pytest.approx(0.08, rel=1e-12)
    assert reflection_bound(REFLECT, 5).upper_bound == pytest.approx(0.20, rel=1e-12)
    big = [reflection_bound(REFLECT.replace(j0=j), 2).upper_bound for j in (1.0, 10.0, 100.0)]
    assert big[0] > big[1] > big[2] and big[2] < 1e-6


def test_average_bounds_values():
    rep = average_bounds(TRANSMIT, 1)
    assert rep.infidelity_estimate == rep.upper_bound == 0.0
    rep = average_bounds(TRANSMIT, 3, regime="transmit")
    assert rep.upper_bound == pytest.approx(6 * 7 * 0.01**2 / 16, rel=1e-12)
    rep = average_bounds(REFLECT, 5, regime="reflect")
    assert rep.upper_bound == pytest.approx(40 / 6 * 0.01, rel=1e-12)
    assert rep.infidelity_estimate <= rep.upper_bound


def test_perturbative_elements_at_vanishing_coupling():
    transmit, reflect = perturbative_matrix_elements(TRANSMIT.replace(g0=1e-9))
    assert transmit == pytest.approx(1.0, abs=1e-12)
    assert reflect is None


@pytest.mark.parametrize("g0", [0.005, 0.01])
def test_perturbative_transmit_element_at_tau(g0):
    config = TRANSMIT.replace(g0=g0)
    tau = swap_time(config)
    transmit, _ = perturbative_matrix_elements(config)
    assert transmit == pytest.approx((-1) ** 4 * (1 - 2 * delta_t(config)), abs=1e-12)
    exact = propagator(build_coupling_matrix(config), tau).matrix[0, 8]
    assert abs(exact - transmit) < 1e-5


@pytest.mark.parametrize("frac", [0.2, 0.5, 0.8, 1.3])
def test_perturbative_transmit_element_off_tau(frac):
    config = TRANSMIT.replace(g0=0.005)
    t = frac * swap_time(config)
    transmit, _ = perturbative_matrix_elements(config, t)
    exact = propagator(build_coupling_matrix(config), t).matrix[0, 8]
    assert abs(exact - transmit) < 1e-5


def test_perturbative_reflect_element():
    _, reflect = perturbative_matrix_elements(REFLECT)
    exact = propagator(build_coupling_matrix(REFLECT), swap_time(REFLECT)).matrix[0, 0]
    assert abs(exact - reflect) <= 5e-3


def test_transmission_dominance_on_coarse_grid():
    for g0 in GRID:
        config = TRANSMIT.replace(g0=g0)
        M = propagator(build_coupling_matrix(config), swap_time(config))
        for n in (1, 2, 5):
            assert fock_fidelities(M, n).sigma_t <= transmission_bound(config, n).upper_bound
        for d in (3, 5):
            assert average_fidelities(M, d).sigma_t <= average_bounds(config, d).upper_bound


def test_reflection_dominance_on_coarse_grid():
    for g0 in GRID:
        config = REFLECT.replace(g0=g0)
        M = propagator(build_coupling_matrix(config), swap_time(config))
        for n in (1, 2, 5):
            assert fock_fidelities(M, n).sigma_r <= reflection_bound(config, n).upper_bound
        for d in (3, 5):
            assert average_fidelities(M, d).sigma_r <= average_bounds(config, d, regime="reflect").upper_bound


def test_leakage_decreases_with_g0():
    sigmas = []
    for g0 in GRID:
        config = TRANSMIT.replace(g0=g0)
        M = propagator(build_coupling_matrix(config), swap_time(config))
        sigmas.append(fock_fidelities(M, 2).sigma_t)
    sigmas = np.array(sigmas)
    # sigma_t oscillates with g0 (tau moves the phases eps_k tau); only the envelope decays
    assert sigmas[10:].max() > 2 * sigmas[:10].max()
    assert sigmas[5:10].max() > 2 * sigmas[:5].max()
    assert np.all(sigmas / GRID**2 <= 3.5 * 2 + 1e-9)


def test_estimate_tracks_exact_infidelity():
    for g0 in GRID:
        config = TRANSMIT.replace(g0=g0)
        M = propagator(build_coupling_matrix(config), swap_time(config))
        rep = transmission_bound(config, 2)
        assert abs(fock_fidelities(M, 2).sigma_t - rep.infidelity_estimate) <= 0.1 * rep.upper_bound


def test_averaged_estimate_relation():
    # <sigma> ~ 2 d (d-1)/(d+1) Delta_t holds to leading order in g0
    config = TRANSMIT.replace(g0=0.002)
    M = propagator(build_coupling_matrix(config), swap_time(config))
    for d in (3, 5):
        est = average_bounds(config, d).infidelity_estimate
        assert average_fidelities(M, d).sigma_t == pytest.approx(est, rel=0.02)
