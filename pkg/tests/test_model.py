import numpy as np
import pytest

from spinbath.errors import UnsupportedConfigError
from spinbath.linalg import hermitian_eig, is_hermitian, kron, spectral_norm_hermitian
from spinbath.model import (
    IDENTITY_2,
    SIGMA_MINUS,
    SIGMA_X,
    SIGMA_Z,
    BathSpec,
    ChainSpec,
    InitSpec,
    build_hamiltonian,
    build_lindblads,
    cyclic_shift_permutation,
    gibbs_state,
    high_temp_state,
    initial_state,
    lindblad_operators,
    pseudo_pure_state,
    site_operator,
    spectral_density,
    total_sigma_z,
    validity_ratio,
)
from spinbath.observables import coherence_l1

from conftest import brute_force_hamiltonian


def single_excitation_vector(n=4):
    v = np.zeros(2**n, dtype=complex)
    for j in range(n):
        v[1 << j] = 0.5
    return v


# --- site_operator ----------------------------------------------------------


def test_site_operator_single_site():
    assert np.array_equal(site_operator(1, 1, SIGMA_X), SIGMA_X)


def test_site_operator_placement():
    assert np.array_equal(site_operator(2, 2, SIGMA_Z), kron(IDENTITY_2, SIGMA_Z))
    assert np.array_equal(site_operator(2, 1, SIGMA_Z), kron(SIGMA_Z, IDENTITY_2))


def test_site_operator_lowering_nonzeros():
    op = site_operator(3, 2, SIGMA_MINUS)
    nz = op[np.abs(op) > 0]
    assert nz.shape == (4,)
    assert np.allclose(nz, 1.0)


def test_site_operator_bit_convention():
    # bit 1 of the basis index <=> sigma_z = +1; site 1 is the MSB
    op = site_operator(4, 1, SIGMA_Z)
    diag = np.real(np.diag(op))
    for i in range(16):
        expected = 1.0 if (i >> 3) & 1 else -1.0
        assert diag[i] == expected


def test_site_operator_range_check():
    with pytest.raises(ValueError):
        site_operator(3, 0, SIGMA_X)
    with pytest.raises(ValueError):
        site_operator(3, 4, SIGMA_X)


# --- Hamiltonian -------------------------------------------------------------


def test_free_spin_spectrum():
    # exchange off (J=0 warns by design): field term only
    with pytest.warns(UserWarning):
        c = ChainSpec(n_sites=4, j_coupling=0.0, dm_strength=0.0, field_strength=0.7)
    w, _ = hermitian_eig(build_hamiltonian(c))
    b = 0.7
    expected = np.repeat([-4 * b, -2 * b, 0.0, 2 * b, 4 * b], [1, 4, 6, 4, 1])
    assert np.abs(w - expected).max() <= 1e-12


def test_single_excitation_expectation(xy_chain):
    h = build_hamiltonian(xy_chain)
    v = single_excitation_vector()
    assert (v.conj() @ h @ v).real == pytest.approx(4.0, abs=1e-12)
    # the uniform one-excitation state is an eigenstate of the ring
    assert np.abs(h @ v - 4.0 * v).max() <= 1e-12


def test_hamiltonian_hermitian_traceless():
    c = ChainSpec(n_sites=4, j_coupling=1.0, dm_strength=0.3, field_strength=0.3)
    h = build_hamiltonian(c)
    assert is_hermitian(h, tol=1e-12)
    assert abs(np.trace(h)) <= 1e-12


def test_hamiltonian_matches_brute_force():
    c = ChainSpec(n_sites=4, j_coupling=1.0, dm_strength=0.3, field_strength=0.3)
    assert np.abs(build_hamiltonian(c) - brute_force_hamiltonian(4, 1.0, 0.3, 0.3)).max() <= 1e-14
    c_open = ChainSpec(n_sites=3, j_coupling=1.0, dm_strength=0.2, field_strength=0.1, boundary="open")
    assert (
        np.abs(build_hamiltonian(c_open) - brute_force_hamiltonian(3, 1.0, 0.2, 0.1, periodic=False)).max()
        <= 1e-14
    )


def test_translation_invariance():
    c = ChainSpec(n_sites=4, j_coupling=1.0, dm_strength=0.3, field_strength=0.3)
    h = build_hamiltonian(c)
    p = cyclic_shift_permutation(4)
    assert np.abs(h @ p - p @ h).max() <= 1e-10


def test_total_z_conserved_with_dm():
    for dm in (0.0, 0.4):
        c = ChainSpec(n_sites=4, j_coupling=1.0, dm_strength=dm, field_strength=0.0)
        h = build_hamiltonian(c)
        sz = total_sigma_z(4)
        assert np.abs(h @ sz - sz @ h).max() <= 1e-12


def test_two_site_periodic_double_counts_bond():
    # the literal bond sum for N=2 periodic includes (1,2) and (2,1)
    per = build_hamiltonian(ChainSpec(n_sites=2))
    opn = build_hamiltonian(ChainSpec(n_sites=2, boundary="open"))
    assert np.abs(per - 2 * opn).max() <= 1e-14


def test_open_boundary_bond_count():
    h_open = build_hamiltonian(ChainSpec(n_sites=4, boundary="open"))
    h_per = build_hamiltonian(ChainSpec(n_sites=4))
    # the wrap-around bond is exactly the difference
    diff = h_per - h_open
    assert np.abs(diff).max() > 0.5
    v = single_excitation_vector()
    assert (v.conj() @ h_open @ v).real == pytest.approx(3.0, abs=1e-12)


# --- Lindblad operators ------------------------------------------------------


def test_lindblad_single_site():
    (op,) = lindblad_operators(1)
    assert np.array_equal(op, SIGMA_MINUS)


def test_lindblads_nilpotent(xy_chain):
    for op in build_lindblads(xy_chain):
        assert np.abs(op @ op).max() == 0.0


def test_lindblad_annihilates_deexcited(xy_chain):
    ops = build_lindblads(xy_chain)
    # basis state with bit 2 = 0 (site 2 de-excited) is annihilated by L_2
    state = np.zeros(16)
    state[0b1011] = 1.0
    assert np.abs(ops[1] @ state).max() == 0.0
    # while a bit-2-excited state maps to the lowered one
    state = np.zeros(16)
    state[0b0100] = 1.0
    lowered = ops[1] @ state
    assert lowered[0b0000] == 1.0


# --- initial states ----------------------------------------------------------


def test_pseudo_pure_coherence_fixtures(xy_chain):
    rho_hot, psd_hot = pseudo_pure_state(xy_chain, 100.0)
    assert coherence_l1(rho_hot) == pytest.approx(0.09, abs=1e-12)
    assert psd_hot
    rho_cold, psd_cold = pseudo_pure_state(xy_chain, 10.0)
    assert coherence_l1(rho_cold) == pytest.approx(0.9, abs=1e-12)
    assert not psd_cold
    # the negative weight sits along the superposition direction
    assert np.linalg.eigvalsh(rho_cold).min() == pytest.approx(-0.21875, abs=1e-12)


def test_pseudo_pure_trace_exact(xy_chain):
    rho, _ = pseudo_pure_state(xy_chain, 37.0)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-15)
    assert is_hermitian(rho, tol=1e-15)


def test_pseudo_pure_high_temperature_limit(xy_chain):
    rho, _ = pseudo_pure_state(xy_chain, 1e12)
    assert np.abs(rho - np.eye(16) / 16).max() <= 1e-12


def test_pseudo_pure_requires_four_sites():
    with pytest.raises(UnsupportedConfigError):
        pseudo_pure_state(ChainSpec(n_sites=3), 10.0)


def test_pseudo_pure_sign_flip(xy_chain):
    rho, psd = pseudo_pure_state(xy_chain, 10.0, epsilon_sign="positive")
    assert psd
    assert coherence_l1(rho) == pytest.approx(0.9, abs=1e-12)


def test_high_temp_state_zero_hamiltonian():
    with pytest.warns(UserWarning):
        c = ChainSpec(n_sites=4, j_coupling=0.0)
    rho = high_temp_state(c, 10.0)
    assert np.abs(rho - np.eye(16) / 16).max() <= 1e-15


def test_high_temp_state_min_eig(xy_chain):
    rho = high_temp_state(xy_chain, 10.0)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-15)
    lam_max = 4 * np.sqrt(2.0)
    assert np.linalg.eigvalsh(rho).min() == pytest.approx((1 - lam_max / 10) / 16, abs=1e-12)


def test_gibbs_state_limits(xy_chain):
    rho = gibbs_state(xy_chain, 1e8)
    assert np.abs(rho - np.eye(16) / 16).max() <= 1e-6
    w = np.linalg.eigvalsh(rho)
    assert w.min() > 0
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)


def test_gibbs_commutes_with_hamiltonian():
    c = ChainSpec(n_sites=4, j_coupling=1.0, dm_strength=0.3, field_strength=0.2)
    h = build_hamiltonian(c)
    rho = gibbs_state(c, 5.0)
    assert np.abs(h @ rho - rho @ h).max() <= 1e-10


def test_gibbs_agrees_with_linearization(xy_chain):
    h = build_hamiltonian(xy_chain)
    norm = spectral_norm_hermitian(h)
    t_s = 100.0 * norm
    diff = np.abs(gibbs_state(xy_chain, t_s) - high_temp_state(xy_chain, t_s)).max()
    assert diff <= (norm / t_s) ** 2


def test_gibbs_linearization_error_is_quadratic(xy_chain):
    h = build_hamiltonian(xy_chain)
    norm = spectral_norm_hermitian(h)
    errs = []
    temps = (50.0 * norm, 100.0 * norm)
    for t_s in temps:
        errs.append(np.abs(gibbs_state(xy_chain, t_s) - high_temp_state(xy_chain, t_s)).max())
    ratio = errs[0] / errs[1]
    assert (temps[1] / temps[0]) ** 2 / 2 <= ratio <= (temps[1] / temps[0]) ** 2 * 2


def test_initial_state_dispatch(xy_chain):
    for mode in ("pseudo_pure", "high_temp_linear", "gibbs"):
        rho, _ = initial_state(xy_chain, InitSpec(system_temperature=50.0, mode=mode))
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)


# --- validity ratio and spectral density -------------------------------------


def test_validity_ratio_field_only():
    with pytest.warns(UserWarning):
        c = ChainSpec(n_sites=4, j_coupling=0.0, field_strength=1.0)
    assert validity_ratio(c, 40.0) == pytest.approx(0.1, abs=1e-12)


def test_validity_ratio_zero_hamiltonian():
    with pytest.warns(UserWarning):
        c = ChainSpec(n_sites=4, j_coupling=0.0)
    assert validity_ratio(c, 10.0) == 0.0


def test_validity_ratio_xy(xy_chain):
    assert validity_ratio(xy_chain, 10.0) == pytest.approx(4 * np.sqrt(2.0) / 10, abs=1e-10)


def test_spectral_density():
    b = BathSpec(coupling_strength=0.01, memory_rate=2.0, bath_temperature=1.0)
    assert spectral_density(0.0, b) == 0.0
    assert spectral_density(2.0, b) == pytest.approx(0.01 * 2.0 / (2 * np.pi))
    omega = 1e6
    assert spectral_density(omega, b) == pytest.approx(0.01 * 4.0 / (np.pi * omega), rel=1e-5)


# --- spec validation ----------------------------------------------------------


def test_chain_spec_validation():
    with pytest.raises(ValueError):
        ChainSpec(n_sites=1)
    with pytest.raises(ValueError):
        ChainSpec(boundary="moebius")
    with pytest.warns(UserWarning):
        ChainSpec(j_coupling=-1.0)
    with pytest.warns(UserWarning):
        ChainSpec(dm_strength=1.5)


def test_bath_spec_validation():
    with pytest.raises(ValueError):
        BathSpec(memory_rate=0.0)
    with pytest.raises(ValueError):
        BathSpec(memory_rate=-1.0)
    with pytest.raises(ValueError):
        BathSpec(coupling_strength=-0.1)
    with pytest.raises(ValueError):
        BathSpec(bath_temperature=-1.0)


def test_init_spec_validation():
    with pytest.raises(ValueError):
        InitSpec(system_temperature=0.0)
    with pytest.raises(ValueError):
        InitSpec(mode="maximally_mixed")
    with pytest.raises(ValueError):
        InitSpec(epsilon_sign="negative")
