import numpy as np
import pytest

from spinchain_echo import ChainParams, coherence_curve, mode_data, mode_factor, shifted_lambda
from spinchain_echo.oracle import (
    EVEN,
    build_mode_hamiltonian,
    ground_state,
    mode_overlap,
    mode_overlaps,
    oracle_coherence,
    oracle_curve,
)


def _random_modes(rng, count):
    for _ in range(count):
        n = 2 * int(rng.integers(1, 150)) + 1
        k = int(rng.integers(1, (n - 1) // 2 + 1))
        yield ChainParams(n, rng.uniform(-2, 2), 0.0, 0.0), rng.uniform(-3, 3), k


def test_hamiltonian_structure(rng):
    for params, lam, k in _random_modes(rng, 200):
        h = build_mode_hamiltonian(params, lam, k).matrix
        assert np.allclose(h, h.conj().T, atol=1e-14)
        # parity: nothing couples the even block to the odd block
        assert np.all(h[:2, 2:] == 0) and np.all(h[2:, :2] == 0)
        q = 2 * np.pi * k / params.n_sites
        eps = lam - np.cos(q)
        assert h[1, 1].real - h[0, 0].real == pytest.approx(4 * eps, abs=1e-12)
        assert abs(h[0, 1]) == pytest.approx(2 * abs(params.gamma * np.sin(q)), abs=1e-12)


def test_no_pairing_without_anisotropy():
    h = build_mode_hamiltonian(ChainParams(21, 0.0, 1.0, 0.0), 0.7, 4).matrix
    assert np.count_nonzero(h - np.diag(np.diag(h))) == 0


def test_pairing_largest_where_sine_peaks():
    p = ChainParams(21, 1.0, 1.0, 0.0)
    amps = [abs(build_mode_hamiltonian(p, 1.0, k).matrix[0, 1]) for k in range(1, 11)]
    k_star = int(np.argmax(np.abs(np.sin(2 * np.pi * np.arange(1, 11) / 21)))) + 1
    assert int(np.argmax(amps)) + 1 == k_star
    assert max(amps) == pytest.approx(2 * np.sin(2 * np.pi * k_star / 21))


def test_even_gap_cross_module():
    p = ChainParams(101, 1.0, 0.0, 0.0)
    w = np.linalg.eigvalsh(build_mode_hamiltonian(p, 1.15, 7).matrix[EVEN, EVEN])
    assert w[1] - w[0] == pytest.approx(2 * mode_data(p, 1.15, 7).omega, abs=1e-10)


def test_even_gap_and_pair_ratio_random(rng):
    for params, lam, k in _random_modes(rng, 1000):
        h = build_mode_hamiltonian(params, lam, k)
        m = mode_data(params, lam, k)
        w = np.linalg.eigvalsh(h.matrix[EVEN, EVEN])
        assert w[1] - w[0] == pytest.approx(2 * m.omega, abs=1e-10)
        psi = ground_state(h)
        if 0 < m.theta < np.pi:
            # compare whichever of tan / cot is <= 1 so the absolute tolerance stays meaningful
            u, v = abs(psi[0]), abs(psi[1])
            if m.theta <= np.pi / 2:
                assert v / u == pytest.approx(np.tan(m.theta / 2), abs=1e-9)
            else:
                assert u / v == pytest.approx(1 / np.tan(m.theta / 2), abs=1e-9)


@pytest.mark.parametrize("lam, expected", [(1.5, 0), (-1.5, 1)])
def test_ground_state_xx_point(lam, expected):
    psi = ground_state(build_mode_hamiltonian(ChainParams(11, 0.0, 0.0, 0.0), lam, 2))
    target = np.zeros(4)
    target[expected] = 1
    assert np.allclose(psi, target, atol=1e-15)


def test_ground_state_balanced_at_zero_epsilon():
    n, k = 12 * 2 + 1, 3
    lam = np.cos(2 * np.pi * k / n)
    psi = ground_state(build_mode_hamiltonian(ChainParams(n, 1.0, 0.0, 0.0), lam, k))
    assert abs(psi[0]) == pytest.approx(abs(psi[1]), abs=1e-12)
    assert psi[0].imag == 0 and psi[0].real > 0


def test_overlap_trivial_cases():
    p = ChainParams(11, 1.0, 1.0, 0.1)
    assert mode_overlap(p, 1.15, 0.85, 2, 0.0) == pytest.approx(1.0, abs=1e-14)
    z = mode_overlaps(p, 1.15, 1.15, 2, np.linspace(0, 50, 26))
    assert np.allclose(np.abs(z), 1.0, atol=1e-12)


def test_overlap_bounded(rng):
    p = ChainParams(21, 0.9, 0.8, 0.3)
    for k in range(1, 11):
        z = mode_overlaps(p, 1.25, 0.35, k, rng.uniform(0, 100, 50))
        assert np.all(np.abs(z) <= 1 + 1e-12)


def test_overlap_against_closed_form_single_mode():
    p = ChainParams(5, 1.0, 1.0, 0.05)
    lam1, lam2 = shifted_lambda(1.0, 0.05, 1), shifted_lambda(1.0, 0.05, 2)
    z = mode_overlap(p, lam1, lam2, 1, 10.0, reference="polarized")
    expected = mode_factor(mode_data(p, lam1, 1), mode_data(p, lam2, 1), 10.0)
    assert abs(z) == pytest.approx(expected, abs=1e-9)


def test_closed_form_assumes_empty_pair_reference():
    # the product formula does not reproduce the ground-state overlap at the critical field
    p = ChainParams(5, 1.0, 1.0, 0.05)
    polarized = coherence_curve(p, (1, 2), [10.0])[0]
    assert abs(polarized - oracle_coherence(p, (1, 2), 10.0, reference="ground")) > 0.3
    assert polarized == pytest.approx(oracle_coherence(p, (1, 2), 10.0, reference="polarized"), abs=1e-12)


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("gamma", [0.3, 1.0])
def test_ground_reference_closed_form_matches_oracle(lam, gamma):
    p = ChainParams(21, gamma, lam, 0.1)
    times = np.linspace(0, 100, 201)
    for pair in [(1, 2), (2, 1), (1, 6), (3, 8)]:
        np.testing.assert_allclose(
            coherence_curve(p, pair, times, reference="ground"),
            oracle_curve(p, pair, times, reference="ground"),
            atol=1e-9, rtol=0,
        )


def test_pairing_sign_does_not_change_moduli():
    p = ChainParams(11, 0.7, 0.9, 0.0)
    for k in range(1, 6):
        for lam in (0.4, 1.3):
            a = build_mode_hamiltonian(p, lam, k)
            b = build_mode_hamiltonian(p, lam, k, pairing_sign=-1.0)
            assert np.allclose(np.linalg.eigvalsh(a.matrix), np.linalg.eigvalsh(b.matrix))
            assert np.allclose(np.abs(ground_state(a)), np.abs(ground_state(b)), atol=1e-12)


def test_oracle_coherence_identities():
    p = ChainParams(21, 1.0, 1.0, 0.05)
    assert oracle_coherence(p, (1, 2), 0.0) == pytest.approx(1.0, abs=1e-12)
    xx = p.replace(gamma=0.0)
    for ref in ("ground", "polarized"):
        assert np.allclose(oracle_curve(xx, (1, 2), np.linspace(0, 60, 31), ref), 1.0, atol=1e-12)


def test_oracle_rejects_bad_mode():
    with pytest.raises(ValueError):
        build_mode_hamiltonian(ChainParams(5, 1.0, 1.0, 0.0), 1.0, 3)
    with pytest.raises(ValueError):
        oracle_coherence(ChainParams(5, 1.0, 1.0, 0.0), (1, 2), 1.0, reference="thermal")
